import pytest

from hyperremoval.hypergraph import KGraph


@pytest.fixture
def triangle():
    return KGraph.complete(2, 3)


@pytest.fixture
def c5():
    return KGraph.cycle(5)


@pytest.fixture
def k4_3():
    """K_4^(3): all four triples on four vertices."""
    return KGraph.complete(3, 4)


@pytest.fixture
def odd_wheel():
    """Hub 0 over the rim 1-2-3-4-5; its 2-shadow is the wheel W_5."""
    return KGraph(3, 6, [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 1, 5)])


@pytest.fixture
def pendant_triangle():
    """K_3 with an extra edge hanging off vertex 0."""
    return KGraph(2, 4, [(0, 1), (1, 2), (0, 2), (0, 3)])
