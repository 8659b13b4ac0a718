import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import nonobtuse_edges
from trievac.geometry import (
    DegenerateTriangle,
    ObtuseTriangle,
    angle_cos,
    area,
    chord,
    cosine_law,
    embed,
    heron,
    make_triangle,
    perimeter_point,
    perimeter_points,
    reduce_arc,
    vertex_arc,
)


def test_make_triangle_sorts_and_records_labels():
    t = make_triangle(0.6, 1.0, 0.8)
    assert t.edges == (1.0, 0.8, 0.6)
    assert t.label_map == ("c", "a", "b")
    assert t.raw_label(1) == "a"


def test_make_triangle_ties_are_stable():
    t = make_triangle(1.0, 1.0, 1.0)
    assert t.label_map == ("a", "b", "c")


@pytest.mark.parametrize("edges", [(1, 1, 3), (1, 1, 2), (0, 1, 1), (-1, 1, 1), (math.nan, 1, 1), (math.inf, 1, 1)])
def test_degenerate_inputs(edges):
    with pytest.raises(DegenerateTriangle):
        make_triangle(*edges)


def test_obtuse_rejected_right_accepted():
    with pytest.raises(ObtuseTriangle):
        make_triangle(1.6, 1, 1)
    t = make_triangle(5, 4, 3)
    assert angle_cos(t, "A") == 0.0


def test_cosine_law_known_angles():
    assert cosine_law(1, 1, 1) == pytest.approx(0.5, abs=1e-15)
    assert cosine_law(5, 3, 4) == 0.0
    t = make_triangle(1, 1, 1)
    for v in "ABC":
        assert angle_cos(t, v) == pytest.approx(0.5, abs=1e-15)
    with pytest.raises(ValueError):
        angle_cos(t, "D")


def test_heron_known_values():
    assert heron(3, 4, 5) == 6.0
    assert area(make_triangle(1, 1, 1)) == pytest.approx(math.sqrt(3) / 4, rel=1e-15)
    assert heron(1, 1, 2) == 0.0


@given(nonobtuse_edges())
def test_heron_is_permutation_invariant(edges):
    values = {heron(*p) for p in itertools.permutations(edges)}
    assert len(values) == 1


@given(nonobtuse_edges())
def test_angles_sum_to_pi(edges):
    t = make_triangle(*edges)
    total = sum(math.acos(max(-1.0, min(1.0, angle_cos(t, v)))) for v in "ABC")
    assert total == pytest.approx(math.pi, abs=1e-9)


@given(nonobtuse_edges())
def test_embedding_reproduces_edges(edges):
    t = make_triangle(*edges)
    e = embed(t)
    A, B, C = e.vertex("A"), e.vertex("B"), e.vertex("C")
    assert np.linalg.norm(C - B) == pytest.approx(t.a, rel=1e-12)
    assert np.linalg.norm(A - C) == pytest.approx(t.b, rel=1e-9)
    assert np.linalg.norm(A - B) == pytest.approx(t.c, rel=1e-9)
    assert A[1] > 0


def test_perimeter_walk_hits_vertices_and_midpoints():
    t = make_triangle(1, 1, 1)
    e = embed(t)
    assert perimeter_point(t, 0.0).point == (0.0, 0.0)
    for v in "BCA":
        assert np.allclose(perimeter_point(t, vertex_arc(t, v)).point, e.vertex(v))
    mid = np.array(perimeter_point(t, 1.5).point)
    # s = 1.5 lies on the second edge walked, halfway between C and A
    assert np.linalg.norm(mid - e.vertex("C")) == pytest.approx(0.5)
    assert np.linalg.norm(mid - e.vertex("A")) == pytest.approx(0.5)


def test_perimeter_orientation_and_wrap():
    t = make_triangle(1.3, 1.1, 0.9)
    P = t.perimeter
    cw = perimeter_point(t, 0.4, "cw")
    assert cw.s == pytest.approx(P - 0.4)
    assert perimeter_point(t, P + 0.25).s == pytest.approx(0.25)
    assert float(reduce_arc(t, -0.1)) == pytest.approx(P - 0.1)
    with pytest.raises(ValueError):
        perimeter_point(t, -1.0)


@settings(max_examples=50)
@given(nonobtuse_edges(), st.floats(0, 1), st.floats(0, 1))
def test_chord_never_exceeds_arc(edges, u, v):
    t = make_triangle(*edges)
    P = t.perimeter
    p, q = perimeter_point(t, u * P), perimeter_point(t, v * P)
    arc = abs(p.s - q.s)
    assert chord(p, q) <= min(arc, P - arc) + 1e-12


def test_vectorised_walk_matches_scalar():
    t = make_triangle(1.3, 1.1, 0.9)
    s = np.linspace(0, 2 * t.perimeter, 37)
    pts = perimeter_points(t, s)
    for si, pi in zip(s, pts):
        assert np.allclose(perimeter_point(t, float(si)).point, pi)


def test_scaled_triangle():
    t = make_triangle(1.3, 1.1, 0.9).scaled(2.0)
    assert t.edges == (2.6, 2.2, 1.8)
