import numpy as np
import pytest

from specsparse.graph import WeightedGraph


def cycle_graph(n: int) -> WeightedGraph:
    return WeightedGraph.from_edges(n, [(i, (i + 1) % n, 1.0) for i in range(n)])


def path_graph(n: int) -> WeightedGraph:
    return WeightedGraph.from_edges(n, [(i, i + 1, 1.0) for i in range(n - 1)])


def star_graph(n: int) -> WeightedGraph:
    """Hub 0 with n-1 unit leaves."""
    return WeightedGraph.from_edges(n, [(0, i, 1.0) for i in range(1, n)])


def complete_graph(n: int) -> WeightedGraph:
    return WeightedGraph.from_edges(
        n, [(i, j, 1.0) for i in range(n) for j in range(i + 1, n)]
    )


def random_symmetric(n: int, rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
    a = rng.standard_normal((n, n)) * scale
    return (a + a.T) / 2.0


@pytest.fixture
def rng():
    return np.random.default_rng(20240614)
