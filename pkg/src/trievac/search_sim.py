"""Brute-force simulation of OppositeSearch in the wireless model.

Two unit-speed agents leave a common start point on the perimeter in
opposite directions.  When one of them steps on the exit the other is told
instantly and walks straight to it.  The worst-case cost is found by sweeping
exit positions over a fine grid; every closed form elsewhere in the package is
checked against this sweep.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .geometry import (
    EDGES,
    GeometryError,
    PerimeterPos,
    Triangle,
    cosine_law,
    perimeter_point,
    perimeter_points,
    reduce_arc,
    vertex_arc,
)

DEFAULT_GRID = 20000
# Evacuation time is 3-Lipschitz in the exit's arc position.
LIPSCHITZ = 3.0

# ccw walk B -> C -> A -> B: (first vertex, second vertex) of every edge
EDGE_ENDPOINTS = {"a": ("B", "C"), "b": ("C", "A"), "c": ("A", "B")}


class InvalidStart(ValueError):
    pass


class ObtuseApex(GeometryError):
    pass


@dataclass(frozen=True)
class StartSpec:
    """Start point on ``edge``, ``x`` away from the edge midpoint.

    Positive ``x`` moves toward the edge's first vertex in the ccw walk
    (``B`` on ``a``, ``C`` on ``b``, ``A`` on ``c``).
    """

    edge: str
    x: float

    def validate(self, t: Triangle) -> None:
        if self.edge not in EDGES:
            raise InvalidStart(f"unknown edge {self.edge!r}")
        half = t.edge(self.edge) / 2.0
        if abs(self.x) > half * (1 + 1e-12):
            raise InvalidStart(f"|x| = {abs(self.x)} exceeds half of edge {self.edge} ({half})")

    def arc(self, t: Triangle) -> float:
        self.validate(t)
        first, _ = EDGE_ENDPOINTS[self.edge]
        s = vertex_arc(t, first) + t.edge(self.edge) / 2.0 - self.x
        return float(reduce_arc(t, s))


@dataclass(frozen=True)
class SearcherState:
    time: float
    pos_cw: PerimeterPos
    pos_ccw: PerimeterPos


def searcher_state(t: Triangle, start: StartSpec, time: float) -> SearcherState:
    """Agent positions ``time`` units after leaving ``start`` (capped at half the perimeter)."""
    time = min(max(time, 0.0), t.perimeter / 2.0)
    s0 = start.arc(t)
    return SearcherState(
        time,
        pos_cw=perimeter_point(t, float(reduce_arc(t, s0 - time))),
        pos_ccw=perimeter_point(t, float(reduce_arc(t, s0 + time))),
    )


@dataclass(frozen=True)
class EvacOutcome:
    cost: float
    worst_exit: PerimeterPos
    resolution: float

    @property
    def tolerance(self) -> float:
        return LIPSCHITZ * self.resolution


def _evac_times(t: Triangle, s0: float, exits: np.ndarray) -> np.ndarray:
    P = t.perimeter
    d_ccw = reduce_arc(t, exits - s0)
    d_cw = P - d_ccw
    found = np.minimum(d_ccw, d_cw)
    # the non-finder walked the other way for the same time
    other = np.where(d_ccw <= d_cw, s0 - found, s0 + found)
    gap = perimeter_points(t, exits) - perimeter_points(t, other)
    cost = found + np.hypot(gap[..., 0], gap[..., 1])
    return np.where(d_ccw == d_cw, found, cost)


def evac_time_for_exit(t: Triangle, start: StartSpec, exit_pos: PerimeterPos | float) -> float:
    s = exit_pos.s if isinstance(exit_pos, PerimeterPos) else float(reduce_arc(t, exit_pos))
    return float(_evac_times(t, start.arc(t), np.array([s]))[0])


def exit_grid(t: Triangle, s0: float, n: int) -> np.ndarray:
    """Uniform exit grid plus the three vertices and the start point, sorted by arc."""
    P = t.perimeter
    extra = [vertex_arc(t, v) for v in ("B", "C", "A")] + [s0]
    return np.unique(np.concatenate([np.arange(n) * (P / n), reduce_arc(t, np.array(extra))]))


def worst_case_oracle(t: Triangle, start: StartSpec, n: int = DEFAULT_GRID) -> EvacOutcome:
    if n < 12:
        raise ValueError("grid must hold at least 12 exits")
    s0 = start.arc(t)
    exits = exit_grid(t, s0, n)
    times = _evac_times(t, s0, exits)
    k = int(np.argmax(times))  # first hit = smallest arc on ties
    return EvacOutcome(float(times[k]), perimeter_point(t, float(exits[k])), t.perimeter / n)


class Rate(str, Enum):
    INCREASING = "increasing"
    DECREASING = "decreasing"
    CONSTANT = "constant"


def monotonicity_rate(phi: float, theta: float, tol: float = 1e-12) -> Rate:
    """Direction of the evacuation cost for an exit at either agent.

    ``phi`` and ``theta`` are the critical angles between each agent's
    velocity and the segment towards the other agent.
    """
    closing = math.cos(phi) + math.cos(theta)
    if abs(closing - 1.0) <= tol:
        return Rate.CONSTANT
    return Rate.INCREASING if closing < 1.0 else Rate.DECREASING


def pair_cost(s_pos, r_pos, time: float) -> float:
    """Evacuation time when the exit sits at one agent's position at ``time``."""
    return time + math.dist(s_pos, r_pos)


def apex_cos(ab: float, ac: float, bc: float) -> float:
    return cosine_law(bc, ab, ac)


def two_segment_worst(ab: float, ac: float, bc: float) -> float:
    """Worst evacuation time for agents leaving ``B`` and ``C`` towards apex ``A``."""
    if min(ab, ac, bc) <= 0 or max(ab, ac, bc) * 2 >= ab + ac + bc:
        raise GeometryError(f"({ab}, {ac}, {bc}) is not a triangle")
    if apex_cos(ab, ac, bc) < -1e-12:
        raise ObtuseApex(f"apex angle exceeds pi/2 for AB={ab}, AC={ac}, BC={bc}")
    return max(ab, ac, bc)


@dataclass(frozen=True)
class TwoSegmentOutcome:
    cost: float
    arg: float  # exit position measured along B -> A -> C
    spacing: float


def two_segment_sweep(ab: float, ac: float, bc: float, n: int = 4000, tie_tol: float = 1e-12) -> TwoSegmentOutcome:
    """Direct simulation of the two-segment scenario over ``n`` exit positions.

    Exits are parametrised by their distance ``u`` from ``B`` along the path
    ``B -> A -> C``.  Agent S leaves ``B`` and agent R leaves ``C`` at time 0;
    each keeps walking the path after passing ``A``.  Values within
    ``tie_tol`` of the maximum count as ties and the smallest ``u`` wins.
    """
    length = ab + ac
    ax = (ab * ab + bc * bc - ac * ac) / (2 * bc)
    A = np.array([ax, math.sqrt(max(ab * ab - ax * ax, 0.0))])
    B = np.zeros(2)
    C = np.array([bc, 0.0])

    def at(u):
        u = np.clip(u, 0.0, length)
        first = u <= ab
        out = np.empty(u.shape + (2,))
        out[first] = B + np.multiply.outer(u[first] / ab, A - B)
        out[~first] = A + np.multiply.outer((u[~first] - ab) / ac, C - A)
        return out

    u = np.unique(np.concatenate([np.linspace(0.0, length, n + 1), [ab]]))
    by_s, by_r = u, length - u
    found = np.minimum(by_s, by_r)
    other = np.where(by_s <= by_r, length - found, found)
    gap = at(u) - at(other)
    cost = found + np.hypot(gap[:, 0], gap[:, 1])
    best = float(cost.max())
    k = int(np.argmax(cost >= best - tie_tol))
    return TwoSegmentOutcome(best, float(u[k]), length / n)
