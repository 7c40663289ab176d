"""
Instance Frontends - turn rectangles, boxes, chord diagrams and explicit layer
lists into intersection models, together with the explicit graph G each one
describes.
"""

import logging
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from src.algorithms.cover_engine import IntersectionModel
from src.algorithms.interval_model import IntervalSupergraph
from src.algorithms.poset_model import Poset, close_transitively
from src.graph.graph_core import AdjacencyGraph
from src.utils.errors import InstanceError, ModelViolationError

# Setup logging
logger = logging.getLogger(__name__)


def _check_pairs(name: str, rows: np.ndarray, axes: int) -> None:
    for axis in range(axes):
        bad = np.nonzero(rows[:, 2 * axis] > rows[:, 2 * axis + 1])[0]
        if bad.size:
            i = int(bad[0])
            raise InstanceError(f"{name} {i}: axis {axis + 1} has lo {rows[i, 2 * axis]} > hi {rows[i, 2 * axis + 1]}")


@dataclass(frozen=True)
class BoxInstance:
    """Closed axis-parallel boxes in R^dim; each box is (l1, h1, ..., ldim, hdim)"""
    dim: int
    boxes: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        if self.dim < 2:
            raise InstanceError(f"box dimension must be >= 2, got {self.dim}")
        boxes = tuple(tuple(int(c) for c in box) for box in self.boxes)
        for i, box in enumerate(boxes):
            if len(box) != 2 * self.dim:
                raise InstanceError(f"box {i} has {len(box)} coordinates, expected {2 * self.dim}")
        if boxes:
            _check_pairs("box", np.array(boxes, dtype=np.int64), self.dim)
        object.__setattr__(self, 'boxes', boxes)

    def coordinates(self) -> np.ndarray:
        return np.array(self.boxes, dtype=np.int64).reshape(len(self.boxes), 2 * self.dim)


@dataclass(frozen=True)
class RectangleInstance:
    """Closed rectangles (x_lo, x_hi, y_lo, y_hi)"""
    rects: Tuple[Tuple[int, int, int, int], ...]

    def __post_init__(self):
        rects = tuple(tuple(int(c) for c in r) for r in self.rects)
        for i, r in enumerate(rects):
            if len(r) != 4:
                raise InstanceError(f"rectangle {i} has {len(r)} coordinates, expected 4")
        if rects:
            _check_pairs("rectangle", np.array(rects, dtype=np.int64), 2)
        object.__setattr__(self, 'rects', rects)

    def as_boxes(self) -> BoxInstance:
        return BoxInstance(2, self.rects)


@dataclass(frozen=True)
class ChordInstance:
    """Chords of a circle given by integer endpoint positions, normalised to a < b"""
    chords: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        chords = []
        for i, chord in enumerate(self.chords):
            if len(chord) != 2:
                raise InstanceError(f"chord {i} needs exactly two endpoints")
            a, b = int(chord[0]), int(chord[1])
            chords.append((min(a, b), max(a, b)))
        endpoints = [e for chord in chords for e in chord]
        seen = set()
        for e in endpoints:
            if e in seen:
                raise InstanceError(f"endpoint {e} is used twice")
            seen.add(e)
        object.__setattr__(self, 'chords', tuple(chords))


@dataclass(frozen=True)
class ExplicitInstance:
    """
    Interval layers given directly, an optional order for the perfect base
    and an optional explicit edge list for G.
    """
    n: int
    layers: Tuple[Tuple[Tuple[int, int], ...], ...]
    poset: Tuple[Tuple[int, int], ...] | None = None
    g_edges: Tuple[Tuple[int, int], ...] | None = None

    def __post_init__(self):
        if self.n < 0:
            raise InstanceError(f"vertex count must be >= 0, got {self.n}")
        layers = tuple(tuple((int(a), int(b)) for a, b in layer) for layer in self.layers)
        for k, layer in enumerate(layers):
            if len(layer) != self.n:
                raise InstanceError(f"layer {k + 1} has {len(layer)} intervals, expected {self.n}")
        object.__setattr__(self, 'layers', layers)
        if self.poset is not None:
            object.__setattr__(self, 'poset', tuple((int(u), int(v)) for u, v in self.poset))
        if self.g_edges is not None:
            object.__setattr__(self, 'g_edges', tuple((int(u), int(v)) for u, v in self.g_edges))


def _box_intersection(coords: np.ndarray, axes: int) -> np.ndarray:
    n = coords.shape[0]
    adj = np.ones((n, n), dtype=bool)
    for axis in range(axes):
        lo, hi = coords[:, 2 * axis], coords[:, 2 * axis + 1]
        adj &= (lo[:, None] <= hi[None, :]) & (lo[None, :] <= hi[:, None])
    np.fill_diagonal(adj, False)
    return adj


def boxes_to_model(b: BoxInstance) -> Tuple[IntersectionModel, AdjacencyGraph]:
    """Axes 1..t-1 become interval layers, axis t the perfect base."""
    n = len(b.boxes)
    coords = b.coordinates()
    layers = [IntervalSupergraph.from_pairs(coords[:, 2 * axis:2 * axis + 2].tolist()) for axis in range(b.dim)]
    model = IntersectionModel(n, tuple(layers[:-1]), layers[-1], exact_intersection=True)
    graph = AdjacencyGraph(n, _box_intersection(coords, b.dim))
    logger.debug("boxes: n=%d dim=%d edges=%d", n, b.dim, int(graph.adj.sum()) // 2)
    return model, graph


def rectangles_to_model(r: RectangleInstance) -> Tuple[IntersectionModel, AdjacencyGraph]:
    """x-intervals form the interval layer, y-intervals the perfect base."""
    return boxes_to_model(r.as_boxes())


def containment_poset(intervals: Sequence[Tuple[int, int]]) -> Poset:
    """[a, b] < [c, d] iff c < a and b < d (strict nesting, transitive by construction)."""
    arr = np.array(intervals, dtype=np.int64).reshape(len(intervals), 2)
    a, b = arr[:, 0], arr[:, 1]
    less = (a[None, :] < a[:, None]) & (b[:, None] < b[None, :])
    return Poset.from_less_matrix(less)


def interleaving_adjacency(chords: Sequence[Tuple[int, int]]) -> np.ndarray:
    """Two chords cross iff a < c < b < d or c < a < d < b."""
    arr = np.array(chords, dtype=np.int64).reshape(len(chords), 2)
    a, b = arr[:, 0], arr[:, 1]
    a1, b1, a2, b2 = a[:, None], b[:, None], a[None, :], b[None, :]
    adj = ((a1 < a2) & (a2 < b1) & (b1 < b2)) | ((a2 < a1) & (a1 < b2) & (b2 < b1))
    np.fill_diagonal(adj, False)
    return adj


def chords_to_model(c: ChordInstance) -> Tuple[IntersectionModel, AdjacencyGraph]:
    """
    Circle graph as interval layer (chord spans overlap) intersected with the
    incomparability graph of strict nesting: chords cross iff their spans
    overlap and neither contains the other.
    """
    n = len(c.chords)
    layer = IntervalSupergraph.from_pairs(c.chords)
    model = IntersectionModel(n, (layer,), containment_poset(c.chords), exact_intersection=True)
    return model, AdjacencyGraph(n, interleaving_adjacency(c.chords))


def explicit_to_model(e: ExplicitInstance) -> Tuple[IntersectionModel, AdjacencyGraph]:
    """
    Without ``g_edges`` G is the conjunction of the layers (and the order's
    incomparability graph); the last interval layer is the perfect base when
    no order is given. With ``g_edges`` every layer must contain G and the
    model is flagged as not exact.

    Raises:
        ModelViolationError: a G edge missing from some layer
    """
    layers = [IntervalSupergraph.from_pairs(layer) for layer in e.layers]
    poset = close_transitively(e.poset, e.n) if e.poset is not None else None

    if e.g_edges is None:
        if poset is not None:
            if not layers:
                raise InstanceError("explicit instance with an order needs at least one interval layer")
            model = IntersectionModel(e.n, tuple(layers), poset, exact_intersection=True)
        else:
            if len(layers) < 2:
                raise InstanceError("explicit instance without an order needs at least two layers")
            model = IntersectionModel(e.n, tuple(layers[:-1]), layers[-1], exact_intersection=True)
        return model, model.adjacency()

    if not layers:
        raise InstanceError("explicit instance needs at least one interval layer")
    graph = AdjacencyGraph.from_edges(e.n, e.g_edges)
    model = IntersectionModel(e.n, tuple(layers), poset, exact_intersection=False)
    names = [f"layer {k + 1}" for k in range(len(layers))] + (["order"] if poset is not None else [])
    for name, matrix in zip(names, model.layer_matrices()):
        missing = np.argwhere(np.triu(graph.adj & ~matrix, k=1))
        if missing.size:
            u, v = (int(x) for x in missing[0])
            raise ModelViolationError(f"edge ({u}, {v}) of G is missing from {name}")
    return model, graph


def build_model(instance) -> Tuple[IntersectionModel, AdjacencyGraph]:
    """Dispatch on the instance type"""
    if isinstance(instance, RectangleInstance):
        return rectangles_to_model(instance)
    elif isinstance(instance, BoxInstance):
        return boxes_to_model(instance)
    elif isinstance(instance, ChordInstance):
        return chords_to_model(instance)
    elif isinstance(instance, ExplicitInstance):
        return explicit_to_model(instance)
    raise InstanceError(f"unknown instance type {type(instance).__name__}")
