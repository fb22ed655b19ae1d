"""Sharp fine saturated monoids: lattice points of strongly convex cones.

A monoid is M = sigma cap Z^n for a strongly convex rational cone sigma.
Fineness and saturation are automatic in this representation.  Divisibility is
b - a in M; closeness predicates quantify over divisor tuples of r.  The value
r = math.inf is the distinguished "infinity" and only makes sense where noted.
"""

from __future__ import annotations

import math
from functools import lru_cache
from itertools import product
from typing import Iterable, Sequence

from . import cones
from .errors import AllZero, EmptySet, NotAMember, NotRClose, SchemaError
from .intlinalg import Vec, is_zero, primitive, vec_gcd, vsub

INF = math.inf
MAX_R = 10**6
MAX_DIVISOR_TUPLES = 2_000_000


def check_r(r, allow_inf: bool = True) -> None:
    if r == INF:
        if not allow_inf:
            raise ValueError("this predicate needs a finite r")
        return
    if not isinstance(r, int) or isinstance(r, bool) or r < 1:
        raise ValueError("r must be a positive integer or infinity")
    if r > MAX_R:
        raise ValueError(f"r larger than {MAX_R} is not supported")


@lru_cache(maxsize=None)
def divisors(r: int) -> tuple[int, ...]:
    return tuple(d for d in range(1, r + 1) if r % d == 0)


class SharpMonoid:
    __slots__ = ("rank", "cone")

    def __init__(self, rank: int, cone: cones.Cone):
        if cone.rank != rank:
            raise ValueError("cone rank does not match monoid rank")
        if cone.lines:
            raise ValueError("monoid cone must be strongly convex")
        self.rank = rank
        self.cone = cone

    @classmethod
    def from_rays(cls, rank: int, rays: Iterable[Sequence[int]]) -> "SharpMonoid":
        return cls(rank, cones.Cone.from_rays(rank, rays))

    @classmethod
    def orthant(cls, rank: int) -> "SharpMonoid":
        return cls.from_rays(rank, [cones.unit(rank, i) for i in range(rank)])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SharpMonoid):
            return NotImplemented
        return self.rank == other.rank and self.cone == other.cone

    def __hash__(self) -> int:
        return hash((self.rank, self.cone))

    def __repr__(self) -> str:
        return f"SharpMonoid(rank={self.rank}, rays={list(self.cone.rays)})"

    def contains(self, x: Sequence[int]) -> bool:
        return self.cone.contains(tuple(int(t) for t in x))

    def require_member(self, x: Sequence[int]) -> Vec:
        v = tuple(int(t) for t in x)
        if not self.contains(v):
            raise NotAMember(f"{v} is not in the monoid")
        return v

    def divides(self, a: Sequence[int], b: Sequence[int]) -> bool:
        a = self.require_member(a)
        b = self.require_member(b)
        return self.cone.contains(vsub(b, a))

    def smallest_element(self, s: Iterable[Sequence[int]]) -> Vec | None:
        """The unique member of s dividing all of s, or None."""
        elems = [self.require_member(x) for x in s]
        if not elems:
            raise EmptySet("smallest element of an empty set")
        for x in elems:
            if all(self.cone.contains(vsub(y, x)) for y in elems):
                return x
        return None

    def _ray_data(self, elems: list[Vec]) -> tuple[Vec, list[int]] | None:
        """Common primitive direction p and multiples m_i, for nonzero elems."""
        p = primitive(elems[0])
        j = next(i for i, t in enumerate(p) if t != 0)
        ms = []
        for a in elems:
            if primitive(a) != p:
                return None
            ms.append(a[j] // p[j])
        return p, ms

    def is_r_close(self, s: Iterable[Sequence[int]], r) -> bool:
        """Is there a in M and divisors lambda_i of r with a_i = lambda_i a?

        Zero elements force a = 0 (sharpness), so a set containing 0 is close
        only when every element is 0.  For r = infinity the condition is just
        a common ray.
        """
        check_r(r)
        elems = [self.require_member(x) for x in s]
        if not elems:
            raise EmptySet("closeness of an empty set")
        zeros = [is_zero(a) for a in elems]
        if any(zeros):
            return all(zeros)
        data = self._ray_data(elems)
        if data is None:
            return False
        if r == INF:
            return True
        _, ms = data
        g = vec_gcd(ms)
        return all(r % (m // g) == 0 for m in ms)

    def root(self, s: Iterable[Sequence[int]], r) -> Vec:
        """Largest a with a_i = lambda_i a, lambda_i | r (gcd point on the ray)."""
        a, _ = self.root_with_multipliers(s, r)
        return a

    def root_with_multipliers(self, s: Iterable[Sequence[int]], r) -> tuple[Vec, list[int]]:
        check_r(r)
        elems = [self.require_member(x) for x in s]
        if not elems:
            raise EmptySet("root of an empty set")
        if all(is_zero(a) for a in elems):
            raise AllZero("root of an all-zero set is undefined")
        if not self.is_r_close(elems, r):
            raise NotRClose(f"set is not {r}-close")
        p, ms = self._ray_data(elems)
        g = vec_gcd(ms)
        # the maximal admissible k is always the gcd: for k | g the ratio
        # m_i/k is a multiple of m_i/g, so divisibility into r only gets harder
        return tuple(g * t for t in p), [m // g for m in ms]

    def is_weakly_r_close(self, s: Iterable[Sequence[int]], r: int) -> bool:
        """For every divisor tuple (lambda_i), {lambda_i a_i} has a smallest.

        Quantified literally over tuples; a pairwise test would be wrong
        (a set can have tuple minima while pairs stay incomparable).
        Duplicate elements are collapsed first, which is harmless: scaled
        copies of one element are always comparable.
        """
        check_r(r, allow_inf=False)
        elems = [self.require_member(x) for x in s]
        if not elems:
            raise EmptySet("closeness of an empty set")
        uniq = sorted(set(elems))
        divs = divisors(r)
        if len(divs) ** len(uniq) > MAX_DIVISOR_TUPLES:
            raise ValueError("too many divisor tuples to enumerate")
        contains = self.cone.contains
        for lam in product(divs, repeat=len(uniq)):
            scaled = [tuple(l * t for t in a) for l, a in zip(lam, uniq)]
            if not any(
                all(contains(vsub(y, x)) for y in scaled) for x in scaled
            ):
                return False
        return True

    def hilbert_basis(self) -> list[Vec]:
        return cones.hilbert_basis(self.cone)

    def is_free(self) -> bool:
        """Is M isomorphic to some N^d?  Equivalent to |Hilbert basis| = dim."""
        hb = self.hilbert_basis()
        if len(hb) != self.cone.dim():
            return False
        # a d-element generating set of a rank-d saturated monoid is a lattice
        # basis of the span automatically; the determinant check is a guard
        return cones.is_unimodular(self.cone)

    def to_obj(self) -> dict:
        return {"rank": self.rank, "rays": [list(r) for r in self.cone.rays]}

    @staticmethod
    def from_obj(obj: object) -> "SharpMonoid":
        if not isinstance(obj, dict):
            raise SchemaError("monoid document must be an object")
        rank = obj.get("rank")
        rays = obj.get("rays")
        if not isinstance(rank, int) or rank < 0:
            raise SchemaError("monoid.rank must be a nonnegative integer")
        if not isinstance(rays, list):
            raise SchemaError("monoid.rays must be a list of integer vectors")
        for ray in rays:
            if (
                not isinstance(ray, list)
                or len(ray) != rank
                or not all(isinstance(t, int) for t in ray)
            ):
                raise SchemaError("each monoid ray must be an integer vector of full rank length")
        cone = cones.Cone.from_rays(rank, [tuple(r) for r in rays])
        if cone.lines:
            raise SchemaError("monoid rays must span a strongly convex cone")
        return SharpMonoid(rank, cone)
