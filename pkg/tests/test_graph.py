import dataclasses
import math
from fractions import Fraction as F
from pathlib import Path

import pytest
from hypothesis import given, settings

from hcmu.assembly import (
    AngleProblem,
    GluingError,
    build_complex,
    build_gluing_graph,
    check_compatibility,
    index_formula_sides,
    single_football_graph,
    solve_angle_plan,
    verify_assembly,
)
from hcmu.football import FootballSpec, profile_solve
from hcmu.io import read_graph
from test_planner import admissible_problems

FOUR_PI = 4.0 * math.pi
TWO_MINIMA = Path(__file__).parent / "data" / "two_minima" / "graph.json"


def assemble(angles, saddles):
    problem = AngleProblem(2, tuple(F(a) for a in angles), frozenset(saddles))
    plan = solve_angle_plan(problem)
    return plan, build_gluing_graph(plan, problem)


def profiles_for(graph, n=129):
    return [profile_solve(spec, n) for spec in graph.footballs]


# ---------------------------------------------------------------- compatibility


def test_compatibility_examples():
    a = FootballSpec(F(1, 2), F(1, 9), 1.0)
    assert check_compatibility(a, FootballSpec(1, F(2, 9), 2.0))
    assert not check_compatibility(a, FootballSpec(1, F(2, 9), 1.0))
    assert check_compatibility(a, a)
    assert not check_compatibility(a, FootballSpec(1, F(1, 9), 2.0))


# ---------------------------------------------------------------- construction


def test_three_saddle_one_vertex_six_segments():
    plan, graph = assemble([3, F(1, 2), F(1, 3)], {0})
    assert len(graph.footballs) == 3 and len(graph.saddles) == 1
    saddle = graph.saddles[0]
    assert saddle.angle == 3 and saddle.segment_count == 6
    cplx = build_complex(graph)
    v = cplx.vertex_of(frozenset(("A", k, j) for k, j in saddle.incident))
    assert v.degree == 6 and v.angle == 3
    (minimum,) = graph.min_vertices
    assert minimum.angle == sum(plan.y) == F(1, 3)
    assert cplx.euler_char == 2


def test_small_angle_graph():
    plan, graph = assemble([2, F(1, 2), F(1, 3)], {0})
    assert [s.angle for s in graph.saddles] == [2]
    assert sorted(v.angle for v in graph.max_vertices) == [F(1, 2), F(1)]
    assert [v.angle for v in graph.min_vertices] == [F(1, 3)]
    assert [s.area for s in graph.footballs] == [FOUR_PI / 2, FOUR_PI]
    assert build_complex(graph).euler_char == 2
    report = verify_assembly(graph, profiles_for(graph))
    assert report.overall, report.table()


def test_areas_follow_max_angles():
    _, graph = assemble([2, F(3, 4), F(1, 5)], {0})
    for spec in graph.footballs:
        assert spec.area == pytest.approx(FOUR_PI * float(spec.alpha), rel=1e-15)


def test_chain_meridians_are_distinct():
    _, graph = assemble([2, 3, F(1, 2)], {0, 1})
    shared = [k for k, m in enumerate(graph.meridians) if len(m) > 1]
    assert shared
    for k in shared:
        assert len(set(graph.meridians[k])) == len(graph.meridians[k])
    for s in graph.saddles:
        assert s.segment_count == 2 * s.angle


def test_index_formula_sides_independent_of_plan():
    plan, graph = assemble([2, F(1, 2), F(1, 3)], {0})
    chi, rhs, smooth, stray = index_formula_sides(graph)
    assert (chi, rhs, smooth, stray) == (2, 2, 1, 0)


def test_single_football_graph():
    graph = single_football_graph(F(1, 3), F(1, 2), prescribed=(0, 1))
    spec = graph.footballs[0]
    assert (spec.alpha, spec.beta) == (F(1, 2), F(1, 3))
    assert graph.max_vertices[0].prescribed == 1 and graph.min_vertices[0].prescribed == 0
    assert not graph.edges
    report = verify_assembly(graph, profiles_for(graph))
    assert report.overall, report.table()
    assert build_complex(graph).euler_char == 2


def test_incompatible_plan_refused():
    problem = AngleProblem(2, (F(2), F(1, 2), F(1, 3)), frozenset({0}))
    plan = solve_angle_plan(problem)
    broken = dataclasses.replace(plan, y=(plan.y[0], plan.y[1] * 2))
    with pytest.raises(GluingError):
        build_gluing_graph(broken, problem)


# ---------------------------------------------------------------- verification


def test_two_minima_hand_authored_graph():
    graph = read_graph(TWO_MINIMA)
    assert check_compatibility(*graph.footballs)
    assert graph.footballs[0].area / graph.footballs[1].area == pytest.approx(1.5, rel=1e-15)
    assert len(graph.min_vertices) == 2
    report = verify_assembly(graph, profiles_for(graph, 257))
    assert report.overall, report.table()
    assert report["gluing_compatibility"].passed


def test_area_fault_fails_extremes_and_warp_ratio():
    _, graph = assemble([2, F(1, 2), F(1, 3)], {0})
    bad = graph.footballs[1]
    bad = FootballSpec(bad.alpha, bad.beta, 1.01 * bad.area)
    graph.footballs[1] = bad
    report = verify_assembly(graph, profiles_for(graph))
    failed = {c.name for c in report.failed}
    assert {"shared_k_max", "warp_ratio_along_edges", "gluing_compatibility"} <= failed


def test_missing_edge_breaks_surface():
    _, graph = assemble([2, F(1, 2), F(1, 3)], {0})
    graph.edges = graph.edges[:-1]
    failed = {c.name for c in verify_assembly(graph, profiles_for(graph, 33)).failed}
    assert "closed_orientable" in failed


def test_wrong_vertex_angle_caught():
    _, graph = assemble([2, F(1, 2), F(1, 3)], {0})
    v = graph.min_vertices[0]
    graph.min_vertices = [dataclasses.replace(v, angle=v.angle + F(1, 7))]
    failed = {c.name for c in verify_assembly(graph, profiles_for(graph, 33)).failed}
    assert "vertex_angles" in failed


def test_unprescribed_cone_point_breaks_index_count():
    _, graph = assemble([2, F(1, 2), F(1, 3)], {0})
    v = graph.min_vertices[0]
    graph.min_vertices = [dataclasses.replace(v, prescribed=None)]
    failed = {c.name for c in verify_assembly(graph, profiles_for(graph, 33)).failed}
    assert "index_formula" in failed


def test_profile_count_mismatch():
    _, graph = assemble([2, F(1, 2), F(1, 3)], {0})
    report = verify_assembly(graph, profiles_for(graph, 33)[:1])
    assert report.names() == ["profile_count"] and not report.overall


@settings(max_examples=25)
@given(admissible_problems())
def test_random_assemblies_verify(problem):
    plan = solve_angle_plan(problem)
    graph = build_gluing_graph(plan, problem)
    for a, b in graph.glued_pairs():
        assert check_compatibility(graph.footballs[a], graph.footballs[b])
    report = verify_assembly(graph, profiles_for(graph, 65))
    assert report.overall, report.table()
