"""
Graph Core - explicit adjacency, induced views and validation predicates
used to check clique covers, independent sets and separations.
"""

import logging
from dataclasses import dataclass, field
from typing import Iterable, List, Sequence, Tuple

import numpy as np

from src.utils.errors import InstanceError

# Setup logging
logger = logging.getLogger(__name__)

VertexSet = Tuple[int, ...]


def as_vertex_set(w: Iterable[int], n: int) -> VertexSet:
    """
    Validate an ordered vertex collection against a graph of n vertices.

    Args:
        w: vertex ids (any iterable of ints)
        n: vertex count of the referenced graph

    Returns:
        the ids as a tuple, order preserved
    """
    members = tuple(int(v) for v in w)
    for v in members:
        if v < 0 or v >= n:
            raise InstanceError(f"vertex id {v} out of range 0..{n - 1}")
    if len(set(members)) != len(members):
        raise InstanceError(f"duplicate vertex ids in {list(members)}")
    return members


@dataclass(frozen=True, eq=False)
class AdjacencyGraph:
    """Dense symmetric irreflexive adjacency of a simple undirected graph"""
    n: int
    adj: np.ndarray = field(repr=False)

    def __post_init__(self):
        adj = np.asarray(self.adj, dtype=bool)
        if adj.shape != (self.n, self.n):
            raise InstanceError(f"adjacency shape {adj.shape} does not match n={self.n}")
        if self.n and adj.diagonal().any():
            raise InstanceError("adjacency has self-loops")
        if not np.array_equal(adj, adj.T):
            raise InstanceError("adjacency is not symmetric")
        adj = adj.copy()
        adj.setflags(write=False)
        object.__setattr__(self, 'adj', adj)

    @classmethod
    def empty(cls, n: int) -> 'AdjacencyGraph':
        return cls(n, np.zeros((n, n), dtype=bool))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> 'AdjacencyGraph':
        if n < 0:
            raise InstanceError(f"vertex count must be >= 0, got {n}")
        adj = np.zeros((n, n), dtype=bool)
        for edge in edges:
            u, v = (int(x) for x in edge)
            if not (0 <= u < n and 0 <= v < n):
                raise InstanceError(f"edge ({u}, {v}) out of range 0..{n - 1}")
            if u == v:
                raise InstanceError(f"self-loop on vertex {u}")
            adj[u, v] = adj[v, u] = True
        return cls(n, adj)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u, v])

    def edges(self) -> List[Tuple[int, int]]:
        us, vs = np.nonzero(np.triu(self.adj, k=1))
        return [(int(u), int(v)) for u, v in zip(us, vs)]

    def complement(self) -> 'AdjacencyGraph':
        comp = ~self.adj
        np.fill_diagonal(comp, False)
        return AdjacencyGraph(self.n, comp)

    def submatrix(self, a: VertexSet, b: VertexSet) -> np.ndarray:
        return self.adj[np.ix_(list(a), list(b))]


def induced_subgraph(g: AdjacencyGraph, w: Iterable[int]) -> Tuple[AdjacencyGraph, VertexSet]:
    """
    G[W]: the subgraph induced on w.

    Returns:
        (subgraph on 0..|w|-1, index map) where index map[i] is the
        original id of new vertex i
    """
    ids = as_vertex_set(w, g.n)
    if not ids:
        return AdjacencyGraph.empty(0), ids
    return AdjacencyGraph(len(ids), g.submatrix(ids, ids)), ids


def is_clique(g: AdjacencyGraph, w: Iterable[int]) -> bool:
    ids = as_vertex_set(w, g.n)
    k = len(ids)
    if k <= 1:
        return True
    return int(g.submatrix(ids, ids).sum()) == k * (k - 1)


def is_independent(g: AdjacencyGraph, w: Iterable[int]) -> bool:
    ids = as_vertex_set(w, g.n)
    if len(ids) <= 1:
        return True
    return not g.submatrix(ids, ids).any()


def are_separated(g: AdjacencyGraph, a: Iterable[int], b: Iterable[int]) -> bool:
    """True iff no edge of g joins a vertex of a to a vertex of b (a, b disjoint)."""
    a_ids = as_vertex_set(a, g.n)
    b_ids = as_vertex_set(b, g.n)
    overlap = set(a_ids) & set(b_ids)
    if overlap:
        raise InstanceError(f"sets are not disjoint, shared vertices {sorted(overlap)}")
    if not a_ids or not b_ids:
        return True
    return not g.submatrix(a_ids, b_ids).any()


def non_adjacent_pair(g: AdjacencyGraph, w: VertexSet) -> Tuple[int, int] | None:
    """First pair (in w order) of distinct members that are not adjacent, if any."""
    if len(w) <= 1:
        return None
    sub = g.submatrix(w, w) | np.eye(len(w), dtype=bool)
    missing = np.argwhere(~sub)
    if missing.size == 0:
        return None
    i, j = missing[0]
    return w[int(i)], w[int(j)]


def adjacent_pair(g: AdjacencyGraph, w: VertexSet) -> Tuple[int, int] | None:
    """First adjacent pair (in w order) inside w, if any."""
    if len(w) <= 1:
        return None
    hits = np.argwhere(g.submatrix(w, w))
    if hits.size == 0:
        return None
    i, j = hits[0]
    return w[int(i)], w[int(j)]
