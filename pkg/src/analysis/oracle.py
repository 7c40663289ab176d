"""
Exact Oracle - exhaustive alpha, beta and phi for desk-scale graphs.

Used to validate greedy exactness on interval and incomparability graphs and
to measure real approximation ratios of the certificates. Every routine
refuses inputs above its cap instead of running unbounded.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, NamedTuple

import networkx as nx

from src.algorithms.interval_model import IntervalSupergraph
from src.graph.graph_core import AdjacencyGraph, VertexSet, induced_subgraph
from src.utils.config import (
    ORACLE_ALL_CLIQUES_N, ORACLE_MAX_ALPHA_N, ORACLE_MAX_BETA_N, ORACLE_MAX_PHI_N,
)
from src.utils.errors import InstanceError, OracleLimitError

# Setup logging
logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OracleLimit:
    """Caps on exact computations"""
    max_alpha_n: int = 20
    max_beta_n: int = 18
    max_phi_n: int = 14
    all_cliques_n: int = 10

    @classmethod
    def from_config(cls) -> 'OracleLimit':
        return cls(ORACLE_MAX_ALPHA_N, ORACLE_MAX_BETA_N, ORACLE_MAX_PHI_N, ORACLE_ALL_CLIQUES_N)


class AlphaResult(NamedTuple):
    value: int
    witness: VertexSet


class BetaResult(NamedTuple):
    value: int
    witness: List[VertexSet]


class PhiReport(NamedTuple):
    value: Fraction
    witness: VertexSet
    mode: str
    cliques_checked: int


def _neighbour_masks(g: AdjacencyGraph) -> List[int]:
    masks = []
    for v in range(g.n):
        mask = 0
        for u in g.adj[v].nonzero()[0]:
            mask |= 1 << int(u)
        masks.append(mask)
    return masks


def _members(mask: int) -> VertexSet:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


def exact_alpha(g: AdjacencyGraph, limit: OracleLimit | None = None) -> AlphaResult:
    """
    Maximum independent set by branch and bound over vertex bitmasks.

    Raises:
        OracleLimitError: when g.n exceeds the alpha cap
    """
    limit = limit or OracleLimit.from_config()
    if g.n > limit.max_alpha_n:
        raise OracleLimitError("exact_alpha", g.n, limit.max_alpha_n)
    nbr = _neighbour_masks(g)
    best = [0, 0]  # size, mask

    def expand(cand: int, chosen: int, size: int) -> None:
        if cand == 0:
            if size > best[0]:
                best[0], best[1] = size, chosen
            return
        if size + cand.bit_count() <= best[0]:
            return
        # branch on the candidate with most neighbours among candidates
        v = max(_members(cand), key=lambda u: ((nbr[u] & cand).bit_count(), -u))
        bit = 1 << v
        expand(cand & ~nbr[v] & ~bit, chosen | bit, size + 1)
        if nbr[v] & cand:
            expand(cand & ~bit, chosen, size)

    expand((1 << g.n) - 1, 0, 0)
    return AlphaResult(best[0], _members(best[1]))


def exact_beta(g: AdjacencyGraph, limit: OracleLimit | None = None) -> BetaResult:
    """
    Minimum clique partition, i.e. an optimal proper colouring of the
    complement. Vertices are placed largest-first (by complement degree);
    the search stops as soon as it meets the alpha lower bound.

    Raises:
        OracleLimitError: when g.n exceeds the beta cap
    """
    limit = limit or OracleLimit.from_config()
    if g.n > limit.max_beta_n:
        raise OracleLimitError("exact_beta", g.n, limit.max_beta_n)
    if g.n == 0:
        return BetaResult(0, [])

    nbr = _neighbour_masks(g)
    full = (1 << g.n) - 1
    non_nbr_count = [(full & ~nbr[v] & ~(1 << v)).bit_count() for v in range(g.n)]
    order = sorted(range(g.n), key=lambda v: (-non_nbr_count[v], v))
    lower = exact_alpha(g, OracleLimit(max_alpha_n=max(limit.max_alpha_n, g.n))).value

    # first fit gives the initial upper bound
    first_fit: List[int] = []
    for v in order:
        for i, part in enumerate(first_fit):
            if part & ~nbr[v] == 0:
                first_fit[i] |= 1 << v
                break
        else:
            first_fit.append(1 << v)
    best = {'parts': list(first_fit)}

    def assign(idx: int, parts: List[int]) -> bool:
        if len(parts) >= len(best['parts']):
            return False
        if idx == len(order):
            best['parts'] = list(parts)
            return len(parts) == lower
        v = order[idx]
        bit = 1 << v
        for i, part in enumerate(parts):
            if part & ~nbr[v] == 0:
                parts[i] = part | bit
                done = assign(idx + 1, parts)
                parts[i] = part
                if done:
                    return True
        if len(parts) + 1 < len(best['parts']):
            parts.append(bit)
            done = assign(idx + 1, parts)
            parts.pop()
            if done:
                return True
        return False

    if len(first_fit) > lower:
        assign(0, [])
    witness = sorted(_members(part) for part in best['parts'])
    return BetaResult(len(witness), witness)


def exact_phi_small(g: AdjacencyGraph, h: IntervalSupergraph, limit: OracleLimit | None = None) -> PhiReport:
    """
    phi(G, H): the largest beta(G[W]) / alpha(G[W]) over cliques W of h.

    At or below ``all_cliques_n`` vertices every clique of h is enumerated
    (mode "all"); above it only maximal cliques are (mode "maximal").
    """
    limit = limit or OracleLimit.from_config()
    if g.n > limit.max_phi_n:
        raise OracleLimitError("exact_phi_small", g.n, limit.max_phi_n)
    if h.n != g.n:
        raise InstanceError(f"layer has {h.n} vertices, graph has {g.n}")

    h_graph = nx.from_numpy_array(h.adjacency_matrix().astype(int))
    if g.n <= limit.all_cliques_n:
        mode, cliques = "all", nx.enumerate_all_cliques(h_graph)
    else:
        mode, cliques = "maximal", nx.find_cliques(h_graph)

    best_value, best_witness, checked = None, (), 0
    for clique in cliques:
        w = tuple(sorted(int(v) for v in clique))
        sub, _ = induced_subgraph(g, w)
        ratio = Fraction(exact_beta(sub, limit).value, exact_alpha(sub, limit).value)
        checked += 1
        if best_value is None or ratio > best_value:
            best_value, best_witness = ratio, w
    if best_value is None:
        best_value = Fraction(1)
    logger.debug("phi=%s over %d %s cliques", best_value, checked, mode)
    return PhiReport(best_value, best_witness, mode, checked)
