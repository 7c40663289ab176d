import math

import pytest

from src.algorithms.base_solvers import (
    CallableBaseSolver, ExactBaseSolver, GreedyBaseSolver, MirskyBaseSolver, PierceBaseSolver,
)
from src.algorithms.cover_engine import (
    CoverCertificate, CoverEngine, IntersectionModel, bound_value, solve_cor1, solve_cor2,
    solve_model, solve_theorem1, solve_theorem1_with_engine, verify_certificate,
)
from src.algorithms.interval_model import IntervalSupergraph
from src.algorithms.poset_model import close_transitively
from src.analysis.oracle import exact_alpha, exact_beta
from src.frontends.instance_frontends import (
    BoxInstance, ExplicitInstance, RectangleInstance, boxes_to_model, explicit_to_model,
    rectangles_to_model,
)
from src.graph.graph_core import AdjacencyGraph, are_separated
from src.utils.errors import (
    ContractViolationError, InstanceError, ModelViolationError, OracleLimitError,
)

FOUR_DISJOINT = [(0, 2), (10, 12), (20, 22), (30, 32)]
THREE_RECTS = ((0, 2, 0, 2), (1, 3, 10, 12), (1, 3, 0, 2))


def _grid_boxes():
    spans = [(0, 1), (3, 4)]
    return BoxInstance(3, tuple(x + y + z for x in spans for y in spans for z in spans))


def _random_rectangles(rng, n, coord_max=30, max_len=8):
    rects = []
    for _ in range(n):
        x, y = rng.integers(0, coord_max + 1, size=2)
        w, h = rng.integers(0, max_len + 1, size=2)
        rects.append((int(x), int(x + w), int(y), int(y + h)))
    return RectangleInstance(tuple(rects))


@pytest.mark.parametrize("alphas, size, phi, expected", [
    ([4], 3, 1.0, 18.0),
    ([2, 2], 8, 1.0, 128.0),
    ([1], 5, 1.0, 10.0),
    ([4], 3, 1.5, 27.0),
    ([0], 0, 1.0, 0.0),
])
def test_bound_value(alphas, size, phi, expected):
    assert bound_value(alphas, size, phi) == pytest.approx(expected)


def test_bound_value_rejects_zero_alpha_on_nonempty_graph():
    with pytest.raises(InstanceError):
        bound_value([0], 2)
    with pytest.raises(InstanceError):
        bound_value([2], -1)


def test_theorem1_single_vertex():
    h = IntervalSupergraph.from_pairs([(0, 0)])
    cert = solve_theorem1(h.adjacency(), h, PierceBaseSolver(h))
    assert cert.cover == [[0]]
    assert cert.independent == [0]
    assert cert.bound == pytest.approx(2.0)


def test_theorem1_disjoint_intervals():
    h = IntervalSupergraph.from_pairs(FOUR_DISJOINT)
    g = h.adjacency()
    cert = solve_theorem1(g, h, PierceBaseSolver(h))
    assert cert.cover == [[0], [1], [2], [3]]
    assert cert.independent == [0, 1, 2, 3]
    assert cert.alphas == [4]
    assert cert.t == 2
    assert cert.bound == pytest.approx(24.0)
    assert verify_certificate(g, cert).passed


def test_theorem1_edgeless_graph_in_disjoint_layer():
    h = IntervalSupergraph.from_pairs([(3 * i, 3 * i + 1) for i in range(7)])
    cert = solve_theorem1(AdjacencyGraph.empty(7), h, GreedyBaseSolver(AdjacencyGraph.empty(7)))
    assert sorted(cert.cover) == [[i] for i in range(7)]
    assert sorted(cert.independent) == list(range(7))


def test_theorem1_refuses_non_supergraph():
    h = IntervalSupergraph.from_pairs([(0, 1), (5, 6)])
    g = AdjacencyGraph.from_edges(2, [(0, 1)])
    with pytest.raises(ModelViolationError, match=r"\(0, 1\)"):
        solve_theorem1(g, h, GreedyBaseSolver(g))


def test_theorem1_uses_observed_phi(triangle):
    h = IntervalSupergraph.from_pairs([(0, 1)] * 3)
    base = CallableBaseSolver(lambda w: ([(v,) for v in w], (w[0],)))
    cert = solve_theorem1(triangle, h, base)
    assert len(cert.cover) == 3
    assert cert.phi == pytest.approx(3.0)
    assert cert.bound == pytest.approx(6.0)
    assert verify_certificate(triangle, cert).passed


def test_theorem1_with_exact_base_on_cycle(cycle5):
    h = IntervalSupergraph.from_pairs([(0, 1)] * 5)
    cert = solve_theorem1(cycle5, h, ExactBaseSolver(cycle5))
    assert len(cert.cover) == 3
    assert len(cert.independent) == 2
    assert cert.phi == pytest.approx(1.5)
    assert verify_certificate(cycle5, cert).passed


def test_exact_base_refuses_large_sets():
    g = AdjacencyGraph.empty(5)
    with pytest.raises(OracleLimitError, match="exceeds oracle cap"):
        ExactBaseSolver(g, max_n=3).solve((0, 1, 2, 3))


def test_contract_checking_catches_bad_base(path3):
    h = IntervalSupergraph.from_pairs([(0, 5)] * 3)
    base = CallableBaseSolver(lambda w: ([tuple(w)], (w[0],)), declared_phi=1.0)
    with pytest.raises(ContractViolationError, match="not a clique"):
        solve_theorem1(path3, h, base, check_contracts=True)


def test_empty_independent_set_is_a_contract_violation(path3):
    h = IntervalSupergraph.from_pairs([(0, 5)] * 3)
    base = CallableBaseSolver(lambda w: ([(v,) for v in w], ()))
    with pytest.raises(ContractViolationError):
        solve_theorem1(path3, h, base, check_contracts=False)


def test_declared_phi_is_checked(path3):
    h = IntervalSupergraph.from_pairs([(0, 5)] * 3)
    base = CallableBaseSolver(lambda w: ([(v,) for v in w], (w[0],)), declared_phi=1.0)
    with pytest.raises(ContractViolationError, match="exceeds declared phi"):
        solve_theorem1(path3, h, base, check_contracts=True)


def test_cor1_three_rectangles():
    model, graph = rectangles_to_model(RectangleInstance(THREE_RECTS))
    cert = solve_cor1(model, graph)
    assert cert.cover == [[0, 2], [1]]
    assert len(cert.independent) == 2
    assert cert.alphas == [1]
    assert cert.bound == pytest.approx(4.0)
    assert verify_certificate(graph, cert).passed


def test_cor1_chain_poset_with_complete_layer():
    p = close_transitively([(0, 1), (1, 2)], 3)
    layer = IntervalSupergraph.from_pairs([(0, 4)] * 3)
    model = IntersectionModel(3, (layer,), p)
    cert = solve_cor1(model)
    assert cert.cover == [[0], [1], [2]]
    assert cert.independent == [0, 1, 2]


def test_cor1_empty_instance():
    model, graph = rectangles_to_model(RectangleInstance(()))
    cert = solve_cor1(model, graph)
    assert cert.cover == []
    assert cert.independent == []
    assert cert.bound == 0.0
    assert verify_certificate(graph, cert).passed


def test_cor1_refuses_inexact_model():
    e = ExplicitInstance(2, (((0, 1), (1, 2)),), g_edges=((0, 1),))
    model, graph = explicit_to_model(e)
    with pytest.raises(ModelViolationError):
        solve_cor1(model, graph)


def test_cor1_refuses_more_layers():
    model, graph = boxes_to_model(_grid_boxes())
    with pytest.raises(InstanceError, match="solve_cor2"):
        solve_cor1(model, graph)


def test_cor2_matches_cor1_for_rectangles(rng):
    for _ in range(10):
        model, graph = rectangles_to_model(_random_rectangles(rng, int(rng.integers(1, 40))))
        assert solve_cor2(model, graph=graph).to_dict() == solve_cor1(model, graph).to_dict()


def test_cor2_grid_of_disjoint_boxes():
    model, graph = boxes_to_model(_grid_boxes())
    cert = solve_cor2(model, graph=graph)
    assert sorted(cert.cover) == [[i] for i in range(8)]
    assert len(cert.independent) == 8
    assert cert.alphas == [2, 2]
    assert cert.t == 3
    assert cert.bound == pytest.approx(128.0)
    assert verify_certificate(graph, cert).passed


def test_cor2_pairwise_intersecting_boxes():
    boxes = BoxInstance(3, tuple((i, 10 + i, 0, 5 + i, 2, 9) for i in range(5)))
    model, graph = boxes_to_model(boxes)
    cert = solve_cor2(model, graph=graph)
    assert cert.cover == [[0, 1, 2, 3, 4]]
    assert cert.bound == pytest.approx(4.0)


def test_cor2_layer_index_out_of_range():
    model, graph = boxes_to_model(_grid_boxes())
    with pytest.raises(InstanceError):
        solve_cor2(model, k=3, graph=graph)


def test_cor2_from_second_layer_covers_the_remaining_layers():
    model, _ = boxes_to_model(_grid_boxes())
    cert = solve_cor2(model, k=2)
    assert sorted(cert.cover) == [[0, 4], [1, 5], [2, 6], [3, 7]]
    assert cert.alphas == [2]
    assert cert.t == 2
    assert cert.bound == pytest.approx(16.0)


def test_two_layers_with_poset_base(rng, random_poset, random_intervals):
    for _ in range(15):
        n = int(rng.integers(1, 25))
        layers = tuple(tuple(random_intervals(rng, n)) for _ in range(2))
        poset = tuple(random_poset(rng, n).relations)
        model, graph = explicit_to_model(ExplicitInstance(n, layers, poset=poset))
        cert, _ = solve_model(model, graph)
        assert cert.t == 3
        report = verify_certificate(graph, cert)
        assert report.passed, report.failures


def test_bound_certification_on_boxes(rng):
    for _ in range(25):
        n = int(rng.integers(1, 60))
        boxes = []
        for _ in range(n):
            lo = rng.integers(0, 40, size=3)
            size = rng.integers(0, 12, size=3)
            boxes.append(tuple(int(c) for axis in range(3) for c in (lo[axis], lo[axis] + size[axis])))
        model, graph = boxes_to_model(BoxInstance(3, tuple(boxes)))
        cert = solve_cor2(model, graph=graph)
        a1, a2 = cert.alphas
        assert len(cert.cover) <= 4 * len(cert.independent) * (math.log2(a1) + 1) * (math.log2(a2) + 1) + 1e-9
        assert verify_certificate(graph, cert).passed


def test_ratio_against_exact_values(rng):
    for _ in range(40):
        model, graph = rectangles_to_model(_random_rectangles(rng, int(rng.integers(1, 13))))
        cert = solve_cor1(model, graph)
        alpha = exact_alpha(graph).value
        beta = exact_beta(graph).value
        assert len(cert.independent) <= alpha <= beta <= len(cert.cover)
        assert len(cert.cover) / beta <= 2 * (math.log2(cert.alphas[0]) + 1) + 1e-9


def test_every_split_is_a_separated_partition(rng):
    for _ in range(60):
        model, graph = rectangles_to_model(_random_rectangles(rng, int(rng.integers(2, 60)), coord_max=60))
        cert, engine = solve_model(model, graph, record_splits=True)
        for record in engine.splits:
            parts = record.left + record.sep + record.right
            assert sorted(parts) == sorted(record.w)
            assert len(set(parts)) == len(parts)
            assert are_separated(graph, record.left, record.right)
        assert engine.stats.split_nodes == len(engine.splits)
        assert sorted(v for part in cert.cover for v in part) == list(range(graph.n))


def test_solving_is_deterministic(rng):
    instance = _random_rectangles(rng, 80, coord_max=100)
    first = solve_cor1(*rectangles_to_model(instance))
    second = solve_cor1(*rectangles_to_model(instance))
    assert first.to_dict() == second.to_dict()


def test_stats_are_recorded():
    h = IntervalSupergraph.from_pairs(FOUR_DISJOINT)
    cert, engine = solve_theorem1_with_engine(h.adjacency(), h, PierceBaseSolver(h))
    assert cert.stats == {"depth": 3, "nodes": 7, "split_nodes": 3, "base_calls": 4}
    assert engine.stats.base_calls == 4


def test_mirsky_solver_metrics():
    base = MirskyBaseSolver(close_transitively([(0, 1)], 2))
    engine = CoverEngine(check_contracts=False)
    engine.run_base(base, (0, 1))
    assert base.calculate_metrics() == {"name": "mirsky", "calls": 1, "declared_phi": 1.0, "observed_phi": 1.0}


def _cert(cover, independent, alphas=(2,)):
    return CoverCertificate(
        cover=cover, independent=independent, alphas=list(alphas), t=2, phi=1.0,
        bound=bound_value(list(alphas), len(independent)),
    )


def test_verify_reports_non_clique_part(path3):
    report = verify_certificate(path3, _cert([[0, 2], [1]], [0, 2]))
    assert not report.passed
    assert not report.checks["cliques"]
    assert any("(0, 2)" in failure for failure in report.failures)


def test_verify_reports_missing_vertex(path3):
    report = verify_certificate(path3, _cert([[0, 1]], [0]))
    assert not report.checks["partition"]
    assert any("vertex 2 missing" in failure for failure in report.failures)


def test_verify_reports_dependent_set_and_bad_bound(path3):
    cert = _cert([[0, 1], [2]], [0, 1])
    cert.bound = 1.0
    report = verify_certificate(path3, cert)
    assert not report.checks["independent"]
    assert not report.checks["bound"]
    assert report.checks["partition"]


def test_certificate_round_trips_through_dict():
    h = IntervalSupergraph.from_pairs(FOUR_DISJOINT)
    cert = solve_theorem1(h.adjacency(), h, PierceBaseSolver(h))
    data = cert.to_dict()
    assert data["v"] == 1
    assert CoverCertificate.from_dict(data).to_dict() == data
    with pytest.raises(InstanceError):
        CoverCertificate.from_dict({"cover": []})
