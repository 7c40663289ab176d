"""
Instance -> certificate pipeline shared by the solve, verify and bench
commands: build the model, pick the solver mode, run it.
"""

import logging
from typing import NamedTuple

from src.algorithms.base_solvers import BaseSolver, ExactBaseSolver, GreedyBaseSolver
from src.algorithms.cover_engine import (
    CoverCertificate, CoverEngine, IntersectionModel,
    solve_model, solve_theorem1_with_engine,
)
from src.frontends.instance_frontends import ExplicitInstance, build_model
from src.graph.graph_core import AdjacencyGraph
from src.utils.errors import InstanceError

# Setup logging
logger = logging.getLogger(__name__)

MODES = ("cor1", "cor2", "theorem1")
BASES = ("greedy", "exact")


class SolveOutcome(NamedTuple):
    certificate: CoverCertificate
    graph: AdjacencyGraph
    model: IntersectionModel
    engine: CoverEngine
    mode: str


def infer_mode(instance, model: IntersectionModel) -> str:
    """theorem1 for explicit instances that carry G, otherwise by interval layer count"""
    if isinstance(instance, ExplicitInstance) and instance.g_edges is not None:
        return "theorem1"
    return "cor1" if len(model.interval_layers) == 1 else "cor2"


def make_base_solver(kind: str, graph: AdjacencyGraph) -> BaseSolver:
    if kind == "greedy":
        return GreedyBaseSolver(graph)
    elif kind == "exact":
        return ExactBaseSolver(graph)
    raise InstanceError(f"unknown base solver {kind!r}, expected one of {', '.join(BASES)}")


def solve_instance(instance, mode: str | None = None, base: str = "greedy",
                   check_contracts: bool | None = None,
                   record_splits: bool = False) -> SolveOutcome:
    """
    Args:
        instance: any frontend instance
        mode: cor1, cor2 or theorem1; inferred when None
        base: base solver on G for theorem1 mode
        check_contracts: validate every base-solver result against G

    Raises:
        InstanceError: malformed instance or a mode that does not fit it
        ModelViolationError: cor1 or cor2 mode on a model that is not an exact intersection
    """
    model, graph = build_model(instance)
    mode = mode or infer_mode(instance, model)
    if mode not in MODES:
        raise InstanceError(f"unknown mode {mode!r}, expected one of {', '.join(MODES)}")

    if mode == "theorem1":
        if not model.interval_layers:
            raise InstanceError("theorem1 mode needs an interval layer")
        cert, engine = solve_theorem1_with_engine(
            graph, model.interval_layers[0], make_base_solver(base, graph),
            check_contracts=check_contracts, record_splits=record_splits)
    else:
        if mode == "cor1" and len(model.interval_layers) != 1:
            raise InstanceError(f"cor1 needs exactly one interval layer, model has {len(model.interval_layers)}")
        cert, engine = solve_model(model, graph, check_contracts=check_contracts, record_splits=record_splits)
    logger.debug("solved n=%d in %s mode", model.n, mode)
    return SolveOutcome(cert, graph, model, engine, mode)
