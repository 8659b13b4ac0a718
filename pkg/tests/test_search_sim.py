import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import nonobtuse_edges
from trievac.geometry import GeometryError, make_triangle
from trievac.search_sim import (
    InvalidStart,
    ObtuseApex,
    Rate,
    StartSpec,
    evac_time_for_exit,
    exit_grid,
    monotonicity_rate,
    pair_cost,
    searcher_state,
    two_segment_sweep,
    two_segment_worst,
    worst_case_oracle,
)


def test_start_arc_positions():
    t = make_triangle(1.3, 1.1, 0.9)
    assert StartSpec("a", 0.0).arc(t) == pytest.approx(0.65)
    assert StartSpec("a", 0.65).arc(t) == pytest.approx(0.0)  # at B
    assert StartSpec("b", 0.55).arc(t) == pytest.approx(1.3)  # at C
    assert StartSpec("c", 0.45).arc(t) == pytest.approx(2.4)  # at A
    with pytest.raises(InvalidStart):
        StartSpec("a", 0.7).arc(t)
    with pytest.raises(InvalidStart):
        StartSpec("d", 0.0).validate(t)


def test_searcher_state_moves_apart():
    t = make_triangle(1, 1, 1)
    start = StartSpec("a", 0.0)
    s0 = searcher_state(t, start, 0.0)
    assert s0.pos_cw == s0.pos_ccw
    s1 = searcher_state(t, start, 0.5)
    assert s1.pos_ccw.point == pytest.approx((1.0, 0.0))  # reached C
    assert s1.pos_cw.point == pytest.approx((0.0, 0.0))  # reached B
    assert searcher_state(t, start, 10.0).time == pytest.approx(1.5)


def test_evac_time_special_exits():
    t = make_triangle(1, 1, 1)
    start = StartSpec("a", 0.0)
    assert evac_time_for_exit(t, start, 0.5) == 0.0
    # the exit opposite the start is found by both at once
    assert evac_time_for_exit(t, start, 0.5 + 1.5) == pytest.approx(1.5)
    # exit at C: found at 1/2, the other agent walks back across a
    assert evac_time_for_exit(t, start, 1.0) == pytest.approx(1.5)


def test_exit_grid_includes_vertices_and_start():
    t = make_triangle(1.3, 1.1, 0.9)
    g = exit_grid(t, 0.123, 100)
    for s in (0.0, t.a, t.a + t.b, 0.123):
        assert np.min(np.abs(g - s)) == 0.0
    assert np.all(np.diff(g) > 0)


def test_oracle_equilateral_midpoint():
    out = worst_case_oracle(make_triangle(1, 1, 1), StartSpec("a", 0.0), 20000)
    assert out.cost == pytest.approx(1.5, abs=out.tolerance)
    assert out.tolerance == pytest.approx(3 * 3 / 20000)
    with pytest.raises(ValueError):
        worst_case_oracle(make_triangle(1, 1, 1), StartSpec("a", 0.0), 5)


@settings(max_examples=25, deadline=None)
@given(nonobtuse_edges(), st.floats(-1, 1), st.sampled_from("abc"))
def test_oracle_is_bounded_by_trivial_strategies(edges, frac, edge):
    t = make_triangle(*edges)
    start = StartSpec(edge, frac * t.edge(edge) / 2)
    out = worst_case_oracle(t, start, 2000)
    # never worse than walking the whole perimeter, never better than half of it
    assert t.perimeter / 2 - 1e-12 <= out.cost <= t.perimeter + 1e-12


@settings(max_examples=25, deadline=None)
@given(nonobtuse_edges(), st.floats(0, 1), st.sampled_from("abc"))
def test_oracle_refines_with_grid(edges, frac, edge):
    t = make_triangle(*edges)
    start = StartSpec(edge, frac * t.edge(edge) / 2)
    coarse = worst_case_oracle(t, start, 1000)
    fine = worst_case_oracle(t, start, 16000)
    assert abs(coarse.cost - fine.cost) <= coarse.tolerance + 1e-12


def test_monotonicity_rate():
    third = math.pi / 3
    assert monotonicity_rate(third, third) is Rate.CONSTANT
    assert monotonicity_rate(0.0, 0.0) is Rate.DECREASING
    assert monotonicity_rate(math.pi / 2, math.pi / 2) is Rate.INCREASING


def test_pair_cost():
    assert pair_cost((0, 0), (3, 4), 1.0) == 6.0


def test_two_segment_worst():
    assert two_segment_worst(1, 1, 1) == 1
    assert two_segment_worst(1.0, 0.8, 0.6) == 1.0
    with pytest.raises(ObtuseApex):
        two_segment_worst(1, 1, 1.6)
    with pytest.raises(GeometryError):
        two_segment_worst(1, 1, 3)


@pytest.mark.parametrize("ab, ac, bc", [(1, 1, 1), (1, 0.8, 0.6), (0.8, 1, 0.6), (1, 1, 1.4), (1.2, 0.7, 0.9)])
def test_two_segment_sweep_matches_max_edge(ab, ac, bc):
    out = two_segment_sweep(ab, ac, bc, 4000)
    assert out.cost == pytest.approx(max(ab, ac, bc), abs=3 * out.spacing)
