"""
Base solvers for the recursion: each one covers a vertex set that is a clique
in the current interval layer and returns a clique cover of G on it together
with an independent set of G.
"""

import logging
from typing import Callable, Dict, List, Tuple

import numpy as np

from src.algorithms.interval_model import IntervalSupergraph, pierce_cover
from src.algorithms.poset_model import Poset, mirsky_base_solver
from src.analysis.oracle import OracleLimit, exact_alpha, exact_beta
from src.graph.graph_core import AdjacencyGraph, VertexSet, induced_subgraph
from src.utils.config import EXACT_BASE_MAX_N
from src.utils.errors import OracleLimitError

# Setup logging
logger = logging.getLogger(__name__)

BaseResult = Tuple[List[VertexSet], VertexSet]


class BaseSolver:
    """
    Base class for all base solvers.

    ``declared_phi`` is the guaranteed ratio |cover| <= phi * |independent|
    per call; ``None`` means no guarantee is declared and the engine uses the
    largest ratio it observed instead.
    """
    def __init__(self, name: str, declared_phi: float | None = 1.0):
        self.name = name
        self.declared_phi = declared_phi
        self.calls = 0
        self.observed_phi = 1.0

    def solve(self, w: VertexSet) -> BaseResult:
        """Cover w (a clique of the current interval layer)"""
        raise NotImplementedError("Subclasses must implement this method")

    def record(self, cover_size: int, independent_size: int) -> None:
        self.calls += 1
        if independent_size:
            self.observed_phi = max(self.observed_phi, cover_size / independent_size)

    @property
    def phi(self) -> float:
        return self.declared_phi if self.declared_phi is not None else self.observed_phi

    def calculate_metrics(self) -> Dict:
        return {
            "name": self.name,
            "calls": self.calls,
            "declared_phi": self.declared_phi,
            "observed_phi": self.observed_phi,
        }


class PierceBaseSolver(BaseSolver):
    """Perfect base given as an interval layer: Helly piercing, phi = 1"""
    def __init__(self, layer: IntervalSupergraph):
        super().__init__("pierce", declared_phi=1.0)
        self.layer = layer

    def solve(self, w: VertexSet) -> BaseResult:
        return pierce_cover(self.layer, w)


class MirskyBaseSolver(BaseSolver):
    """Perfect base given as a poset: antichains by height, phi = 1"""
    def __init__(self, poset: Poset):
        super().__init__("mirsky", declared_phi=1.0)
        self.poset = poset

    def solve(self, w: VertexSet) -> BaseResult:
        return mirsky_base_solver(self.poset, w)


class CallableBaseSolver(BaseSolver):
    """Adapter for a plain function w -> (cover, independent)"""
    def __init__(self, func: Callable[[VertexSet], BaseResult], declared_phi: float | None = None,
                 name: str = "callable"):
        super().__init__(name, declared_phi=declared_phi)
        self.func = func

    def solve(self, w: VertexSet) -> BaseResult:
        cover, independent = self.func(w)
        return [tuple(part) for part in cover], tuple(independent)


class GreedyBaseSolver(BaseSolver):
    """
    Greedy clique partition and greedy independent set on G[w] for graphs
    given explicitly. Declares no phi.
    """
    def __init__(self, graph: AdjacencyGraph):
        super().__init__("greedy", declared_phi=None)
        self.graph = graph

    def solve(self, w: VertexSet) -> BaseResult:
        if not w:
            return [], ()
        sub, ids = induced_subgraph(self.graph, w)
        degree = sub.adj.sum(axis=1)

        parts: List[List[int]] = []
        for v in np.argsort(-degree, kind="stable"):
            for part in parts:
                if sub.adj[v, part].all():
                    part.append(int(v))
                    break
            else:
                parts.append([int(v)])

        alive = np.ones(sub.n, dtype=bool)
        independent: List[int] = []
        while alive.any():
            live_degree = np.where(alive, (sub.adj & alive).sum(axis=1), sub.n + 1)
            v = int(np.argmin(live_degree))
            independent.append(v)
            alive[v] = False
            alive &= ~sub.adj[v]

        cover = [tuple(ids[i] for i in sorted(part)) for part in parts]
        return cover, tuple(ids[i] for i in sorted(independent))


class ExactBaseSolver(BaseSolver):
    """Exhaustive beta and alpha on G[w]; refuses sets above ``max_n``"""
    def __init__(self, graph: AdjacencyGraph, max_n: int = EXACT_BASE_MAX_N):
        super().__init__("exact", declared_phi=None)
        self.graph = graph
        self.max_n = max_n
        self.limit = OracleLimit(max_alpha_n=max_n, max_beta_n=max_n)

    def solve(self, w: VertexSet) -> BaseResult:
        if len(w) > self.max_n:
            raise OracleLimitError("exact base solver", len(w), self.max_n)
        if not w:
            return [], ()
        sub, ids = induced_subgraph(self.graph, w)
        beta = exact_beta(sub, self.limit)
        alpha = exact_alpha(sub, self.limit)
        cover = [tuple(ids[i] for i in part) for part in beta.witness]
        return cover, tuple(ids[i] for i in alpha.witness)


def perfect_base_solver(base: Poset | IntervalSupergraph) -> BaseSolver:
    if isinstance(base, Poset):
        return MirskyBaseSolver(base)
    return PierceBaseSolver(base)
