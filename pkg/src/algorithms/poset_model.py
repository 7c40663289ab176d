"""
Poset Model - strict partial orders used as the perfect base layer.

The base graph is the incomparability graph of the order: antichains are its
cliques and chains its independent sets. Mirsky's construction partitions any
subset into as many antichains as its longest chain has elements.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple

import networkx as nx
import numpy as np

from src.graph.graph_core import AdjacencyGraph, VertexSet, as_vertex_set
from src.utils.errors import InstanceError

# Setup logging
logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Poset:
    """Transitively closed strict order on 0..n-1; ``less[u, v]`` means u < v"""
    n: int
    less: np.ndarray = field(repr=False)
    pred_count: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        less = np.asarray(self.less, dtype=bool).copy()
        if less.shape != (self.n, self.n):
            raise InstanceError(f"order matrix shape {less.shape} does not match n={self.n}")
        less.setflags(write=False)
        pred_count = less.sum(axis=0)
        pred_count.setflags(write=False)
        object.__setattr__(self, 'less', less)
        object.__setattr__(self, 'pred_count', pred_count)

    @classmethod
    def from_less_matrix(cls, less: np.ndarray) -> 'Poset':
        """Wrap an order that is already irreflexive, acyclic and transitive."""
        less = np.asarray(less, dtype=bool)
        return cls(less.shape[0], less)

    @property
    def relations(self) -> FrozenSet[Tuple[int, int]]:
        us, vs = np.nonzero(self.less)
        return frozenset((int(u), int(v)) for u, v in zip(us, vs))

    def comparable(self, u: int, v: int) -> bool:
        return bool(self.less[u, v] or self.less[v, u])

    def topological(self, w: Iterable[int]) -> List[int]:
        # u < v implies pred(u) is a strict subset of pred(v)
        return sorted(w, key=lambda v: (int(self.pred_count[v]), v))


def close_transitively(edges: Iterable[Sequence[int]], n: int) -> Poset:
    """
    Build the transitive closure of a relation given as (u, v) pairs, u < v.

    Raises:
        InstanceError: on an out-of-range element or a cycle; the message
            names the cycle witness
    """
    if n < 0:
        raise InstanceError(f"element count must be >= 0, got {n}")
    digraph = nx.DiGraph()
    digraph.add_nodes_from(range(n))
    for edge in edges:
        u, v = (int(x) for x in edge)
        if not (0 <= u < n and 0 <= v < n):
            raise InstanceError(f"order pair ({u}, {v}) out of range 0..{n - 1}")
        digraph.add_edge(u, v)
    if not nx.is_directed_acyclic_graph(digraph):
        cycle = [u for u, _ in nx.find_cycle(digraph)]
        raise InstanceError(f"order relation has a cycle: {' < '.join(map(str, cycle + cycle[:1]))}")

    closure = nx.transitive_closure_dag(digraph)
    less = np.zeros((n, n), dtype=bool)
    for u, v in closure.edges():
        less[u, v] = True
    logger.debug("closed %d pairs into %d relations", digraph.number_of_edges(), int(less.sum()))
    return Poset(n, less)


def incomparability_adjacency(p: Poset) -> AdjacencyGraph:
    adj = ~(p.less | p.less.T)
    np.fill_diagonal(adj, False)
    return AdjacencyGraph(p.n, adj)


def _chain_lengths(p: Poset, order: List[int], upward: bool) -> np.ndarray:
    """Longest chain ending at (or, with ``upward``, starting at) each member of order."""
    k = len(order)
    sub = p.less[np.ix_(order, order)] if k else np.zeros((0, 0), dtype=bool)
    lengths = np.ones(k, dtype=np.int64)
    if upward:
        for idx in range(k - 1, -1, -1):
            above = sub[idx, idx + 1:]
            if above.any():
                lengths[idx] = 1 + lengths[idx + 1:][above].max()
    else:
        for idx in range(k):
            below = sub[:idx, idx]
            if below.any():
                lengths[idx] = 1 + lengths[:idx][below].max()
    return lengths


def heights(p: Poset, w: Sequence[int]) -> Dict[int, int]:
    """Length of the longest chain of w ending at each member (minimum 1)."""
    order = p.topological(w)
    lengths = _chain_lengths(p, order, upward=False)
    return {v: int(h) for v, h in zip(order, lengths)}


def longest_chain(p: Poset, w: Sequence[int]) -> VertexSet:
    """Lexicographically least maximum chain of w, listed bottom to top."""
    order = p.topological(w)
    if not order:
        return ()
    depth = {v: int(d) for v, d in zip(order, _chain_lengths(p, order, upward=True))}
    remaining = max(depth.values())
    chain: List[int] = []
    candidates = [v for v in w if depth[v] == remaining]
    while candidates:
        v = min(candidates)
        chain.append(v)
        remaining -= 1
        candidates = [u for u in w if depth[u] == remaining and p.less[v, u]]
    return tuple(chain)


def mirsky_base_solver(p: Poset, w: Iterable[int] | None = None) -> Tuple[List[VertexSet], VertexSet]:
    """
    Antichain partition of w by chain height, together with a longest chain.

    Returns:
        (antichains ordered by height, chain); the two have equal size
    """
    ids = tuple(range(p.n)) if w is None else as_vertex_set(w, p.n)
    height = heights(p, ids)
    levels: Dict[int, List[int]] = {}
    for v in sorted(ids):
        levels.setdefault(height[v], []).append(v)
    cover = [tuple(levels[k]) for k in sorted(levels)]
    chain = longest_chain(p, ids)
    return cover, chain
