"""
Interval Model - interval supergraphs with their canonical ordering and the
exact interval-graph primitives the divide and conquer relies on:
left neighbourhoods, greedy maximum independent set, Helly piercing and the
three-way split around a clique separator.
"""

import logging
from dataclasses import dataclass, field
from typing import Iterable, List, NamedTuple, Sequence, Tuple

import numpy as np

from src.graph.graph_core import AdjacencyGraph, VertexSet, as_vertex_set
from src.utils.errors import InstanceError

# Setup logging
logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Interval:
    """Closed integer interval [lo, hi]"""
    lo: int
    hi: int

    def __post_init__(self):
        if self.lo > self.hi:
            raise InstanceError(f"interval [{self.lo}, {self.hi}] has lo > hi")

    def intersects(self, other: 'Interval') -> bool:
        return max(self.lo, other.lo) <= min(self.hi, other.hi)

    def contains(self, point: int) -> bool:
        return self.lo <= point <= self.hi


def canonical_order(intervals: Sequence[Interval]) -> List[int]:
    """Vertex ids sorted by (lo, hi, id)."""
    for iv in intervals:
        if iv.lo > iv.hi:
            raise InstanceError(f"interval [{iv.lo}, {iv.hi}] has lo > hi")
    return sorted(range(len(intervals)), key=lambda v: (intervals[v].lo, intervals[v].hi, v))


@dataclass(frozen=True, eq=False)
class IntervalSupergraph:
    """
    Interval representation of one supergraph layer.

    ``pi`` is the canonical ordering and ``position[v]`` is the index of v
    in ``pi``. Views on a vertex subset w use the order pi induces on w.
    """
    intervals: Tuple[Interval, ...]
    pi: Tuple[int, ...] = field(init=False)
    lo: np.ndarray = field(init=False, repr=False)
    hi: np.ndarray = field(init=False, repr=False)
    position: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        intervals = tuple(self.intervals)
        pi = tuple(canonical_order(intervals))
        position = np.empty(len(pi), dtype=np.int64)
        position[list(pi)] = np.arange(len(pi))
        lo = np.array([iv.lo for iv in intervals], dtype=np.int64)
        hi = np.array([iv.hi for iv in intervals], dtype=np.int64)
        for arr in (lo, hi, position):
            arr.setflags(write=False)
        object.__setattr__(self, 'intervals', intervals)
        object.__setattr__(self, 'pi', pi)
        object.__setattr__(self, 'lo', lo)
        object.__setattr__(self, 'hi', hi)
        object.__setattr__(self, 'position', position)

    @classmethod
    def from_pairs(cls, pairs: Iterable[Sequence[int]]) -> 'IntervalSupergraph':
        return cls(tuple(Interval(int(a), int(b)) for a, b in pairs))

    @property
    def n(self) -> int:
        return len(self.intervals)

    def adjacent(self, u: int, v: int) -> bool:
        return u != v and max(self.lo[u], self.lo[v]) <= min(self.hi[u], self.hi[v])

    def adjacency_matrix(self) -> np.ndarray:
        """Closed-interval intersection as a dense boolean matrix, diagonal cleared."""
        adj = (self.lo[:, None] <= self.hi[None, :]) & (self.lo[None, :] <= self.hi[:, None])
        np.fill_diagonal(adj, False)
        return adj

    def adjacency(self) -> AdjacencyGraph:
        return AdjacencyGraph(self.n, self.adjacency_matrix())

    def in_order(self, w: Iterable[int]) -> List[int]:
        """w sorted by canonical position."""
        return sorted(w, key=lambda v: self.position[v])


def left_neighborhood(h: IntervalSupergraph, i: int, w: Iterable[int] | None = None) -> VertexSet:
    """
    N(v_i): vertices before position i in pi whose interval meets v_i's.

    Every returned interval starts at or before lo(v_i) and ends at or after
    it, so the set is a clique of h. With ``w`` the result is restricted to w.
    """
    if not 0 <= i < h.n:
        raise InstanceError(f"position {i} out of range 0..{h.n - 1}")
    v = h.pi[i]
    point = h.lo[v]
    candidates = h.pi[:i] if w is None else h.in_order(
        u for u in as_vertex_set(w, h.n) if h.position[u] < i)
    return tuple(u for u in candidates if h.hi[u] >= point)


def _by_right_end(h: IntervalSupergraph, w: Sequence[int]) -> List[int]:
    ids = np.asarray(w, dtype=np.int64)
    order = np.lexsort((h.position[ids], h.hi[ids]))
    return [int(v) for v in ids[order]]


def greedy_mis(h: IntervalSupergraph, w: Iterable[int] | None = None) -> VertexSet:
    """
    Maximum independent set of h[w]: repeatedly take the interval with the
    smallest right end and drop everything meeting it.

    Returns:
        the chosen vertices; they are pairwise disjoint, so the returned
        order is simultaneously by hi, by lo and by pi
    """
    ids = tuple(range(h.n)) if w is None else as_vertex_set(w, h.n)
    chosen: List[int] = []
    last_hi = None
    for v in _by_right_end(h, ids) if ids else []:
        if last_hi is None or h.lo[v] > last_hi:
            chosen.append(v)
            last_hi = h.hi[v]
    return tuple(chosen)


def pierce_cover(h: IntervalSupergraph, w: Iterable[int] | None = None) -> Tuple[List[VertexSet], VertexSet]:
    """
    Minimum clique cover of h[w] by Helly piercing.

    Intervals are scanned by right end; an interval not containing the
    current pierce point opens a new part pierced at its own right end.
    The openers are pairwise disjoint, so |cover| == |independent| and both
    equal alpha(h[w]).

    Returns:
        (parts, independent) where each part lists its members in pi order
    """
    ids = tuple(range(h.n)) if w is None else as_vertex_set(w, h.n)
    parts: List[List[int]] = []
    openers: List[int] = []
    point = None
    for v in _by_right_end(h, ids) if ids else []:
        if point is None or h.lo[v] > point:
            point = h.hi[v]
            openers.append(v)
            parts.append([v])
        else:
            parts[-1].append(v)
    return [tuple(h.in_order(part)) for part in parts], tuple(openers)


class SplitResult(NamedTuple):
    left: VertexSet
    sep: VertexSet
    right: VertexSet
    feasible: bool
    independent: VertexSet


def split_sets(h: IntervalSupergraph, w: Iterable[int] | None = None) -> SplitResult:
    """
    Split w around the separator N(v_j*).

    v_j is the floor(alpha/2)-th member (1-based) of a maximum independent
    set I in pi order and v_j* the next member of I. ``right`` holds every
    w-vertex at or after v_j*, ``sep`` the w-vertices before v_j* meeting it
    and ``left`` the remaining predecessors of v_j*. left is separated from
    right in h, alpha(h[left]) = floor(alpha/2) and
    alpha(h[right]) = ceil(alpha/2).
    """
    ids = tuple(range(h.n)) if w is None else as_vertex_set(w, h.n)
    independent = greedy_mis(h, ids)
    if len(independent) < 2:
        return SplitResult((), (), (), False, independent)

    j = len(independent) // 2
    pivot = independent[j]
    pivot_pos = h.position[pivot]
    pivot_lo = h.lo[pivot]

    left: List[int] = []
    sep: List[int] = []
    right: List[int] = []
    for v in h.in_order(ids):
        if h.position[v] >= pivot_pos:
            right.append(v)
        elif h.hi[v] >= pivot_lo:
            sep.append(v)
        else:
            left.append(v)
    logger.debug("split alpha=%d pivot=%d left=%d sep=%d right=%d",
                 len(independent), pivot, len(left), len(sep), len(right))
    return SplitResult(tuple(left), tuple(sep), tuple(right), True, independent)
