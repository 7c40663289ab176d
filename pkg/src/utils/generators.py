"""Seeded random instances; the same (type, n, seed, coord_max) always gives the same instance."""

import logging

import numpy as np

from src.frontends.instance_frontends import (
    BoxInstance, ChordInstance, ExplicitInstance, RectangleInstance,
)
from src.utils.config import DEFAULT_COORD_MAX
from src.utils.errors import InstanceError

# Setup logging
logger = logging.getLogger(__name__)

SEED_MASK = (1 << 64) - 1


def make_rng(seed: int) -> np.random.Generator:
    """Any signed 64-bit seed, reduced modulo 2^64"""
    return np.random.default_rng(int(seed) & SEED_MASK)


def _random_spans(rng: np.random.Generator, n: int, coord_max: int, axes: int) -> np.ndarray:
    """n rows of ``axes`` (lo, hi) pairs inside [0, coord_max]; spans up to a fifth of the range."""
    cols = []
    max_len = max(1, coord_max // 5)
    for _ in range(axes):
        lo = rng.integers(0, coord_max + 1, size=n)
        length = rng.integers(0, max_len + 1, size=n)
        hi = np.minimum(lo + length, coord_max)
        cols.extend([lo, hi])
    return np.stack(cols, axis=1) if cols else np.zeros((n, 0), dtype=np.int64)


def random_rectangles(n: int, seed: int, coord_max: int = DEFAULT_COORD_MAX) -> RectangleInstance:
    rows = _random_spans(make_rng(seed), n, coord_max, 2)
    return RectangleInstance(tuple(tuple(int(c) for c in row) for row in rows))


def random_boxes(n: int, seed: int, coord_max: int = DEFAULT_COORD_MAX, dim: int = 3) -> BoxInstance:
    rows = _random_spans(make_rng(seed), n, coord_max, dim)
    return BoxInstance(dim, tuple(tuple(int(c) for c in row) for row in rows))


def random_chords(n: int, seed: int) -> ChordInstance:
    """A uniform perfect matching of the endpoints 0..2n-1"""
    perm = make_rng(seed).permutation(2 * n)
    return ChordInstance(tuple((int(perm[2 * i]), int(perm[2 * i + 1])) for i in range(n)))


def random_explicit(n: int, seed: int, coord_max: int = DEFAULT_COORD_MAX, density: float = 0.2) -> ExplicitInstance:
    """One interval layer plus a random order (pairs i < j kept with probability ``density``)"""
    rng = make_rng(seed)
    spans = _random_spans(rng, n, coord_max, 1)
    layer = tuple((int(lo), int(hi)) for lo, hi in spans)
    label = rng.permutation(n)
    us, vs = np.nonzero(np.triu(rng.random((n, n)) < density, k=1))
    poset = tuple((int(label[u]), int(label[v])) for u, v in zip(us, vs))
    return ExplicitInstance(n, (layer,), poset=poset)


def generate(kind: str, n: int, seed: int, coord_max: int = DEFAULT_COORD_MAX):
    if n < 0:
        raise InstanceError(f"n must be >= 0, got {n}")
    if coord_max < 0:
        raise InstanceError(f"coord_max must be >= 0, got {coord_max}")
    if kind == "rectangles":
        return random_rectangles(n, seed, coord_max)
    elif kind == "boxes":
        return random_boxes(n, seed, coord_max)
    elif kind == "chords":
        return random_chords(n, seed)
    elif kind == "explicit":
        return random_explicit(n, seed, coord_max)
    raise InstanceError(f"unknown instance type {kind!r}")
