"""Triangle kernel: validated edges, Cosine-Law angles, Heron area, perimeter walk.

Vertices follow the usual convention: ``A``, ``B``, ``C`` sit opposite the
edges ``a >= b >= c``.  The canonical embedding puts ``B`` at the origin, ``C``
on the positive x-axis and ``A`` in the upper half-plane, so walking the
perimeter counterclockwise from ``B`` visits ``B -> C -> A -> B`` and traverses
the edges in the order ``a, b, c``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

EDGES = ("a", "b", "c")
VERTICES = ("A", "B", "C")

# Non-obtuse test tolerance, relative to a^2.
OBTUSE_RTOL = 1e-12


class GeometryError(ValueError):
    """Base class for invalid triangle input."""


class DegenerateTriangle(GeometryError):
    pass


class ObtuseTriangle(GeometryError):
    pass


class Orientation(str, Enum):
    CCW = "ccw"
    CW = "cw"


@dataclass(frozen=True)
class Triangle:
    """Edge triple sorted so that ``a >= b >= c``.

    ``label_map[i]`` is the canonical label (``"a"``, ``"b"`` or ``"c"``) of
    the i-th length the caller passed to :func:`make_triangle`.
    """

    a: float
    b: float
    c: float
    label_map: tuple[str, str, str] = ("a", "b", "c")

    def edge(self, label: str) -> float:
        return {"a": self.a, "b": self.b, "c": self.c}[label]

    @property
    def edges(self) -> tuple[float, float, float]:
        return (self.a, self.b, self.c)

    @property
    def perimeter(self) -> float:
        return self.a + self.b + self.c

    def raw_label(self, index: int) -> str:
        """Canonical label of the caller's ``index``-th edge."""
        return self.label_map[index]

    def scaled(self, factor: float) -> "Triangle":
        return Triangle(self.a * factor, self.b * factor, self.c * factor, self.label_map)


def make_triangle(x: float, y: float, z: float) -> Triangle:
    """Sort three positive lengths into a non-obtuse, non-degenerate triangle."""
    lengths = [float(x), float(y), float(z)]
    if not all(math.isfinite(v) and v > 0 for v in lengths):
        raise DegenerateTriangle(f"edge lengths must be positive and finite, got {lengths}")
    order = sorted(range(3), key=lambda i: -lengths[i])  # stable on ties
    a, b, c = (lengths[i] for i in order)
    if not b + c > a:
        raise DegenerateTriangle(f"degenerate triangle: b + c = {b + c!r} <= a = {a!r}")
    if b * b + c * c - a * a < -OBTUSE_RTOL * a * a:
        raise ObtuseTriangle(f"obtuse triangle: b^2 + c^2 < a^2 for edges ({a}, {b}, {c})")
    label_map = [""] * 3
    for canonical, raw in zip(EDGES, order):
        label_map[raw] = canonical
    return Triangle(a, b, c, tuple(label_map))


def cosine_law(opposite: float, side1: float, side2: float) -> float:
    """Cosine of the angle between ``side1`` and ``side2``."""
    return (side1 * side1 + side2 * side2 - opposite * opposite) / (2.0 * side1 * side2)


def angle_cos(t: Triangle, vertex: str) -> float:
    if vertex == "A":
        return cosine_law(t.a, t.b, t.c)
    if vertex == "B":
        return cosine_law(t.b, t.a, t.c)
    if vertex == "C":
        return cosine_law(t.c, t.a, t.b)
    raise ValueError(f"unknown vertex {vertex!r}")


def heron(x: float, y: float, z: float) -> float:
    """Area from three edge lengths.

    The lengths are sorted first so that every permutation of the same triple
    returns a bit-identical value.  A slightly negative product on a
    degenerate triple is clipped to zero.
    """
    a, b, c = sorted((x, y, z), reverse=True)
    p = (a + b + c) / 2.0
    return math.sqrt(max(p * (p - a) * (p - b) * (p - c), 0.0))


def area(t: Triangle) -> float:
    return heron(t.a, t.b, t.c)


@dataclass(frozen=True)
class Embedding:
    A: tuple[float, float]
    B: tuple[float, float]
    C: tuple[float, float]

    def vertex(self, label: str) -> np.ndarray:
        return np.asarray(getattr(self, label), dtype=float)


def embed(t: Triangle) -> Embedding:
    ax = (t.a * t.a + t.c * t.c - t.b * t.b) / (2.0 * t.a)
    ay = math.sqrt(max(t.c * t.c - ax * ax, 0.0))
    return Embedding(A=(ax, ay), B=(0.0, 0.0), C=(t.a, 0.0))


@dataclass(frozen=True)
class PerimeterPos:
    """Counterclockwise arc length from ``B`` plus the cached planar point."""

    s: float
    point: tuple[float, float] = field(compare=False)


def _walk(t: Triangle, s: np.ndarray) -> np.ndarray:
    """Planar points at ccw arc lengths ``s`` (already reduced to ``[0, P)``)."""
    emb = embed(t)
    B, C, A = emb.vertex("B"), emb.vertex("C"), emb.vertex("A")
    s = np.asarray(s, dtype=float)
    on_a = s <= t.a
    on_b = ~on_a & (s <= t.a + t.b)
    on_c = ~(on_a | on_b)
    out = np.empty(s.shape + (2,))
    out[on_a] = B + np.multiply.outer(s[on_a] / t.a, C - B)
    out[on_b] = C + np.multiply.outer((s[on_b] - t.a) / t.b, A - C)
    out[on_c] = A + np.multiply.outer((s[on_c] - t.a - t.b) / t.c, B - A)
    return out


def reduce_arc(t: Triangle, s):
    """Reduce arc lengths modulo the perimeter into ``[0, P)``."""
    P = t.perimeter
    r = np.mod(s, P)
    return np.where(r >= P, 0.0, r)


def perimeter_points(t: Triangle, s) -> np.ndarray:
    """Vectorised planar lookup for ccw arc lengths from ``B``."""
    return _walk(t, reduce_arc(t, np.asarray(s, dtype=float)))


def perimeter_point(t: Triangle, s: float, orientation: Orientation | str = Orientation.CCW) -> PerimeterPos:
    if s < 0:
        raise ValueError("arc length must be non-negative")
    if Orientation(orientation) is Orientation.CW:
        s = -s
    r = float(reduce_arc(t, s))
    x, y = _walk(t, np.array([r]))[0]
    return PerimeterPos(r, (float(x), float(y)))


def vertex_arc(t: Triangle, vertex: str) -> float:
    return {"B": 0.0, "C": t.a, "A": t.a + t.b}[vertex]


def chord(p: PerimeterPos, q: PerimeterPos) -> float:
    return math.hypot(p.point[0] - q.point[0], p.point[1] - q.point[1])
