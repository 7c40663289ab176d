import numpy as np
import pytest

from src.algorithms.interval_model import IntervalSupergraph
from src.algorithms.poset_model import close_transitively
from src.graph.graph_core import AdjacencyGraph


@pytest.fixture(autouse=True)
def check_contracts(monkeypatch):
    """Base-solver contracts are validated in every test."""
    monkeypatch.setattr("src.algorithms.cover_engine.CHECK_CONTRACTS", True)


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


@pytest.fixture
def random_intervals():
    def build(rng, n, coord_max=40, max_len=12):
        lo = rng.integers(0, coord_max + 1, size=n)
        hi = lo + rng.integers(0, max_len + 1, size=n)
        return [(int(a), int(b)) for a, b in zip(lo, hi)]
    return build


@pytest.fixture
def random_layer(random_intervals):
    def build(rng, n, **kwargs):
        return IntervalSupergraph.from_pairs(random_intervals(rng, n, **kwargs))
    return build


@pytest.fixture
def random_poset():
    def build(rng, n, density=0.3):
        label = rng.permutation(n)
        pairs = [(int(label[i]), int(label[j]))
                 for i in range(n) for j in range(i + 1, n) if rng.random() < density]
        return close_transitively(pairs, n)
    return build


@pytest.fixture
def random_graph():
    def build(rng, n, density=0.4):
        upper = np.triu(rng.random((n, n)) < density, k=1)
        return AdjacencyGraph(n, upper | upper.T)
    return build


@pytest.fixture
def path3():
    return AdjacencyGraph.from_edges(3, [(0, 1), (1, 2)])


@pytest.fixture
def triangle():
    return AdjacencyGraph.from_edges(3, [(0, 1), (1, 2), (0, 2)])


@pytest.fixture
def cycle5():
    return AdjacencyGraph.from_edges(5, [(i, (i + 1) % 5) for i in range(5)])
