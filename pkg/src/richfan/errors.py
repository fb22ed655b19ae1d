"""Exception hierarchy shared by the whole package.

DomainError covers mathematically meaningful failures (the CLI maps these to
exit code 1); SchemaError covers malformed input documents (exit code 2).
"""


class DomainError(Exception):
    """A well-formed input outside an operation's domain."""


class SchemaError(Exception):
    """Input document does not match the expected JSON shape."""


class DisconnectedGraph(DomainError):
    pass


class UnknownEdge(DomainError):
    pass


class DimensionMismatch(DomainError):
    pass


class NotAMember(DomainError):
    pass


class EmptySet(DomainError):
    pass


class NotRClose(DomainError):
    pass


class AllZero(DomainError):
    pass


class NotRRich(DomainError):
    pass


class NotAFace(DomainError):
    pass


class ShapeMismatch(DomainError):
    pass


class MalformedFan(DomainError):
    pass


class UnknownCoordinate(DomainError):
    pass


class InvalidChoice(DomainError):
    pass


class NotMinimalOrder(DomainError):
    pass


class RankNotThree(DomainError):
    pass
