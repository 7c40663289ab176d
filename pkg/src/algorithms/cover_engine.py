"""
Cover Engine - divide and conquer over an interval supergraph.

Each node with alpha(h[w]) >= 2 is split into (left, sep, right): left and
right are separated in h (hence in G) and recursed on, sep is a clique of h
and goes to the base solver. The cover is the union of the three covers and
the independent set is the larger of left+right and the sep one. By
induction |cover| <= 2 * phi * |independent| * (log2 alpha(h) + 1).

Several interval layers are handled by peeling: the base solver of layer k is
the recursion on layer k+1 restricted to the clique, down to the perfect base.
"""

import logging
import math
from dataclasses import asdict, dataclass, field
from typing import Dict, List, NamedTuple, Sequence, Tuple

import numpy as np

from src.algorithms.base_solvers import BaseResult, BaseSolver, perfect_base_solver
from src.algorithms.interval_model import IntervalSupergraph, greedy_mis, split_sets
from src.algorithms.poset_model import Poset
from src.graph.graph_core import (
    AdjacencyGraph, VertexSet, adjacent_pair, as_vertex_set, non_adjacent_pair,
)
from src.utils.config import BOUND_SLACK, CHECK_CONTRACTS, FORMAT_VERSION
from src.utils.errors import ContractViolationError, InstanceError, ModelViolationError

# Setup logging
logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class IntersectionModel:
    """
    t-1 interval layers plus a perfect base; G is the intersection of all
    layers when ``exact_intersection`` is set. Models carrying their own G
    have ``exact_intersection`` False and may lack a perfect base.
    """
    n: int
    interval_layers: Tuple[IntervalSupergraph, ...]
    perfect_base: Poset | IntervalSupergraph | None
    exact_intersection: bool = True

    def __post_init__(self):
        object.__setattr__(self, 'interval_layers', tuple(self.interval_layers))
        for k, layer in enumerate(self.interval_layers):
            if layer.n != self.n:
                raise InstanceError(f"layer {k + 1} has {layer.n} vertices, expected {self.n}")
        if self.perfect_base is not None and self.perfect_base.n != self.n:
            raise InstanceError(f"perfect base has {self.perfect_base.n} vertices, expected {self.n}")

    @property
    def t(self) -> int:
        return len(self.interval_layers) + (1 if self.perfect_base is not None else 0)

    def layer_matrices(self) -> List[np.ndarray]:
        matrices = [layer.adjacency_matrix() for layer in self.interval_layers]
        if isinstance(self.perfect_base, Poset):
            matrices.append(~(self.perfect_base.less | self.perfect_base.less.T))
        elif self.perfect_base is not None:
            matrices.append(self.perfect_base.adjacency_matrix())
        return matrices

    def adjacency(self) -> AdjacencyGraph:
        """Conjunction of every layer's adjacency"""
        adj = np.ones((self.n, self.n), dtype=bool)
        for matrix in self.layer_matrices():
            adj &= matrix
        np.fill_diagonal(adj, False)
        return AdjacencyGraph(self.n, adj)


@dataclass
class SolveStats:
    depth: int = 0
    nodes: int = 0
    split_nodes: int = 0
    base_calls: int = 0


class SplitRecord(NamedTuple):
    layer: int
    w: VertexSet
    left: VertexSet
    sep: VertexSet
    right: VertexSet


@dataclass
class CoverCertificate:
    """Clique cover, independent set and the bound they satisfy"""
    cover: List[List[int]]
    independent: List[int]
    alphas: List[int]
    t: int
    phi: float
    bound: float
    stats: Dict[str, int] = field(default_factory=dict)

    def to_dict(self) -> Dict:
        return {
            "v": FORMAT_VERSION,
            "cover": [list(part) for part in self.cover],
            "independent": list(self.independent),
            "alphas": list(self.alphas),
            "t": self.t,
            "phi": float(self.phi),
            "bound": float(self.bound),
            "stats": dict(self.stats),
        }

    @classmethod
    def from_dict(cls, data: Dict) -> 'CoverCertificate':
        try:
            return cls(
                cover=[[int(v) for v in part] for part in data["cover"]],
                independent=[int(v) for v in data["independent"]],
                alphas=[int(a) for a in data["alphas"]],
                t=int(data["t"]),
                phi=float(data["phi"]),
                bound=float(data["bound"]),
                stats=dict(data.get("stats", {})),
            )
        except (KeyError, TypeError, ValueError) as e:
            raise InstanceError(f"malformed certificate: {e}") from e


@dataclass
class VerificationReport:
    checks: Dict[str, bool]
    failures: List[str]

    @property
    def passed(self) -> bool:
        return all(self.checks.values())


class CoverEngine:
    """
    Runs the recursion and, when ``check_contracts`` is on, validates every
    base-solver result against ``graph``.
    """
    def __init__(self, graph: AdjacencyGraph | None = None,
                 check_contracts: bool | None = None,
                 record_splits: bool = False):
        self.graph = graph
        self.check_contracts = CHECK_CONTRACTS if check_contracts is None else check_contracts
        if self.check_contracts and graph is None:
            raise ValueError("contract checking needs the explicit graph")
        self.record_splits = record_splits
        self.stats = SolveStats()
        self.splits: List[SplitRecord] = []
        self._depth = 0

    def cover(self, h: IntervalSupergraph, base: BaseSolver, w: VertexSet, layer: int = 1) -> BaseResult:
        """Clique cover and independent set of G[w]"""
        self._depth += 1
        self.stats.nodes += 1
        self.stats.depth = max(self.stats.depth, self._depth)
        try:
            if len(w) <= 1:
                return self.run_base(base, w)
            split = split_sets(h, w)
            if not split.feasible:
                return self.run_base(base, w)

            self.stats.split_nodes += 1
            if self.record_splits:
                self.splits.append(SplitRecord(layer, w, split.left, split.sep, split.right))
            left_cover, left_ind = self.cover(h, base, split.left, layer)
            sep_cover, sep_ind = self.run_base(base, split.sep) if split.sep else ([], ())
            right_cover, right_ind = self.cover(h, base, split.right, layer)

            combined = left_ind + right_ind
            independent = combined if len(combined) >= len(sep_ind) else sep_ind
            return left_cover + sep_cover + right_cover, independent
        finally:
            self._depth -= 1

    def run_base(self, base: BaseSolver, w: VertexSet) -> BaseResult:
        if not w:
            return [], ()
        cover, independent = base.solve(w)
        self.stats.base_calls += 1
        if not independent:
            raise ContractViolationError(f"{base.name} returned no independent vertex for {len(w)} vertices")
        base.record(len(cover), len(independent))
        if self.check_contracts:
            self._check_base(base, w, cover, independent)
        return cover, independent

    def _check_base(self, base: BaseSolver, w: VertexSet, cover: List[VertexSet], independent: VertexSet) -> None:
        covered = [v for part in cover for v in part]
        if sorted(covered) != sorted(w):
            raise ContractViolationError(f"{base.name}: cover parts do not partition the input set")
        for part in cover:
            pair = non_adjacent_pair(self.graph, tuple(part))
            if pair is not None:
                raise ContractViolationError(f"{base.name}: part {list(part)} is not a clique, {pair} not adjacent")
        if not set(independent) <= set(w):
            raise ContractViolationError(f"{base.name}: independent set leaves the input set")
        pair = adjacent_pair(self.graph, tuple(independent))
        if pair is not None:
            raise ContractViolationError(f"{base.name}: independent set has edge {pair}")
        if base.declared_phi is not None and len(cover) > base.declared_phi * len(independent) + BOUND_SLACK:
            raise ContractViolationError(
                f"{base.name}: ratio {len(cover)}/{len(independent)} exceeds declared phi {base.declared_phi}")


class LayerPeelingSolver(BaseSolver):
    """Base solver of one layer: the recursion on the next layer, restricted to w"""
    def __init__(self, engine: CoverEngine, layer: IntervalSupergraph, inner: BaseSolver, layer_number: int):
        alpha = len(greedy_mis(layer))
        phi = 2.0 * inner.phi * (math.log2(alpha) + 1.0) if alpha else inner.phi
        super().__init__(f"layer-{layer_number}", declared_phi=phi)
        self.engine = engine
        self.layer = layer
        self.inner = inner
        self.layer_number = layer_number

    def solve(self, w: VertexSet) -> BaseResult:
        return self.engine.cover(self.layer, self.inner, w, self.layer_number)


def bound_value(alphas: Sequence[int], independent_size: int, phi: float = 1.0) -> float:
    """
    2^(t-1) * phi * |I| * prod(log2 alpha_i + 1) with t - 1 = len(alphas).
    An empty independent set (empty instance) has bound 0.
    """
    if independent_size < 0 or phi < 0 or any(a < 0 for a in alphas):
        raise InstanceError("bound inputs must be nonnegative")
    if independent_size == 0:
        return 0.0
    if any(a == 0 for a in alphas):
        raise InstanceError(f"alpha values {list(alphas)} include 0 for a nonempty graph")
    value = (2.0 ** len(alphas)) * phi * independent_size
    for a in alphas:
        value *= math.log2(a) + 1.0
    return value


def _certificate(engine: CoverEngine, cover: List[VertexSet], independent: VertexSet,
                 alphas: List[int], phi: float) -> CoverCertificate:
    return CoverCertificate(
        cover=[list(part) for part in cover],
        independent=list(independent),
        alphas=alphas,
        t=len(alphas) + 1,
        phi=phi,
        bound=bound_value(alphas, len(independent), phi),
        stats=asdict(engine.stats),
    )


def solve_theorem1(g: AdjacencyGraph, h: IntervalSupergraph, base: BaseSolver,
                   check_contracts: bool | None = None,
                   record_splits: bool = False) -> CoverCertificate:
    """
    General form: h is an interval supergraph of g and ``base`` covers
    cliques of h. phi is the base solver's declared value, or the largest
    observed per-call ratio when it declares none.

    Raises:
        ModelViolationError: when some edge of g is missing from h
    """
    return solve_theorem1_with_engine(g, h, base, check_contracts, record_splits)[0]


def solve_theorem1_with_engine(g: AdjacencyGraph, h: IntervalSupergraph, base: BaseSolver,
                               check_contracts: bool | None = None,
                               record_splits: bool = False) -> Tuple[CoverCertificate, CoverEngine]:
    if g.n != h.n:
        raise InstanceError(f"graph has {g.n} vertices, interval layer has {h.n}")
    missing = np.argwhere(np.triu(g.adj & ~h.adjacency_matrix(), k=1))
    if missing.size:
        u, v = (int(x) for x in missing[0])
        raise ModelViolationError(f"edge ({u}, {v}) of G is not an edge of the interval supergraph")

    engine = CoverEngine(g, check_contracts=check_contracts, record_splits=record_splits)
    cover, independent = engine.cover(h, base, tuple(range(g.n)))
    alphas = [len(greedy_mis(h))]
    cert = _certificate(engine, cover, independent, alphas, base.phi)
    logger.info("theorem1: n=%d alpha(H)=%d cover=%d independent=%d phi=%.4g",
                g.n, alphas[0], len(cover), len(independent), base.phi)
    return cert, engine


def _solve_layers(model: IntersectionModel, layers: Sequence[IntervalSupergraph],
                  graph: AdjacencyGraph | None, check_contracts: bool | None,
                  record_splits: bool, first_layer: int) -> Tuple[CoverCertificate, CoverEngine]:
    if not model.exact_intersection:
        raise ModelViolationError("layered solve needs E(G) to be exactly the intersection of the layers")
    if model.perfect_base is None:
        raise InstanceError("model has no perfect base layer")
    if not layers:
        raise InstanceError("model needs at least one interval layer")
    check = CHECK_CONTRACTS if check_contracts is None else check_contracts
    if check and graph is None:
        graph = IntersectionModel(model.n, tuple(layers), model.perfect_base).adjacency()
    engine = CoverEngine(graph, check_contracts=check, record_splits=record_splits)

    base: BaseSolver = perfect_base_solver(model.perfect_base)
    for offset in range(len(layers) - 1, 0, -1):
        base = LayerPeelingSolver(engine, layers[offset], base, first_layer + offset)

    alphas = [len(greedy_mis(layer)) for layer in layers]
    if model.n == 0:
        return _certificate(engine, [], (), alphas, 1.0), engine
    cover, independent = engine.cover(layers[0], base, tuple(range(model.n)), first_layer)
    cert = _certificate(engine, cover, independent, alphas, 1.0)
    logger.info("t=%d alphas=%s cover=%d independent=%d bound=%.6g",
                cert.t, alphas, len(cover), len(independent), cert.bound)
    return cert, engine


def solve_cor1(model: IntersectionModel, graph: AdjacencyGraph | None = None,
               check_contracts: bool | None = None, record_splits: bool = False) -> CoverCertificate:
    """One interval layer plus a perfect base; phi = 1."""
    if len(model.interval_layers) != 1:
        raise InstanceError(f"model has {len(model.interval_layers)} interval layers; use solve_cor2")
    return _solve_layers(model, model.interval_layers, graph, check_contracts, record_splits, 1)[0]


def solve_cor2(model: IntersectionModel, k: int = 1, graph: AdjacencyGraph | None = None,
               check_contracts: bool | None = None, record_splits: bool = False) -> CoverCertificate:
    """
    Peel interval layers k..t-1 one after another, the perfect base last.
    The bound is 2^(t-1) |I| prod(log2 alpha(H_i) + 1) over the peeled layers.
    """
    if not 1 <= k <= len(model.interval_layers):
        raise InstanceError(f"layer index {k} out of range 1..{len(model.interval_layers)}")
    return _solve_layers(model, model.interval_layers[k - 1:], graph, check_contracts, record_splits, k)[0]


def solve_model(model: IntersectionModel, graph: AdjacencyGraph | None = None,
                check_contracts: bool | None = None,
                record_splits: bool = False) -> Tuple[CoverCertificate, CoverEngine]:
    """Layered solve over every interval layer that also hands back the engine (stats, split trace)."""
    return _solve_layers(model, model.interval_layers, graph, check_contracts, record_splits, 1)


def verify_certificate(g: AdjacencyGraph, cert: CoverCertificate) -> VerificationReport:
    """Re-check a certificate against g without trusting the solver."""
    failures: List[str] = []
    checks = {"partition": True, "cliques": True, "independent": True, "bound": True, "sandwich": True}

    seen: Dict[int, int] = {}
    for idx, part in enumerate(cert.cover):
        for v in part:
            if not 0 <= v < g.n:
                checks["partition"] = False
                failures.append(f"part {idx} has out-of-range vertex {v}")
            elif v in seen:
                checks["partition"] = False
                failures.append(f"vertex {v} appears in parts {seen[v]} and {idx}")
            else:
                seen[v] = idx
    for v in range(g.n):
        if v not in seen:
            checks["partition"] = False
            failures.append(f"vertex {v} missing from cover")

    for idx, part in enumerate(cert.cover):
        members = tuple(v for v in dict.fromkeys(part) if 0 <= v < g.n)
        pair = non_adjacent_pair(g, members)
        if pair is not None:
            checks["cliques"] = False
            failures.append(f"part {idx} is not a clique: {pair} not adjacent")

    try:
        independent = as_vertex_set(cert.independent, g.n)
        pair = adjacent_pair(g, independent)
        if pair is not None:
            checks["independent"] = False
            failures.append(f"independent set has edge {pair}")
    except InstanceError as e:
        checks["independent"] = False
        failures.append(f"independent set invalid: {e}")

    if len(cert.cover) > cert.bound + BOUND_SLACK:
        checks["bound"] = False
        failures.append(f"cover size {len(cert.cover)} exceeds bound {cert.bound}")
    try:
        expected = bound_value(cert.alphas, len(cert.independent), cert.phi)
    except InstanceError as e:
        expected = float("nan")
        failures.append(f"bound cannot be recomputed: {e}")
    if not abs(expected - cert.bound) <= BOUND_SLACK * max(1.0, expected):
        checks["bound"] = False
        failures.append(f"stated bound {cert.bound} differs from recomputed {expected}")

    if len(cert.independent) > len(cert.cover):
        checks["sandwich"] = False
        failures.append(f"independent set ({len(cert.independent)}) larger than cover ({len(cert.cover)})")

    return VerificationReport(checks, failures)
