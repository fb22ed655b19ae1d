import pytest

from richfan import Graph, SharpMonoid, TropicalCurve


@pytest.fixture
def triangle() -> Graph:
    return Graph.build([0, 1, 2], [(0, 0, 1), (1, 1, 2), (2, 2, 0)])


@pytest.fixture
def twogon() -> Graph:
    return Graph.build([0, 1], [(0, 0, 1), (1, 0, 1)])


@pytest.fixture
def theta() -> Graph:
    return Graph.build([0, 1], [(0, 0, 1), (1, 0, 1), (2, 0, 1)])


@pytest.fixture
def bridge() -> Graph:
    return Graph.build([0, 1], [(0, 0, 1)])


@pytest.fixture
def loop_graph() -> Graph:
    return Graph.build([0], [(0, 0, 0)])


@pytest.fixture
def nn3() -> SharpMonoid:
    return SharpMonoid.orthant(3)


@pytest.fixture
def nested_curve(triangle, nn3) -> TropicalCurve:
    # nested lengths: weakly 1-rich but not 1-rich
    return TropicalCurve.build(
        triangle, nn3, {0: (1, 0, 0), 1: (1, 1, 0), 2: (1, 1, 1)}
    )


@pytest.fixture
def basis_curve(triangle, nn3) -> TropicalCurve:
    # pairwise incomparable lengths: not even weakly 1-rich
    return TropicalCurve.build(
        triangle, nn3, {0: (1, 0, 0), 1: (0, 1, 0), 2: (0, 0, 1)}
    )
