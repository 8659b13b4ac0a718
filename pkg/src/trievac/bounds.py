"""Upper and lower bounds for the four starting-point games.

The games differ in who picks the starting edge and who picks the point on
it:

========  =========  ===========
game      edge       point
========  =========  ===========
L_under   algorithm  algorithm
L_over    adversary  algorithm
U_under   algorithm  adversary
U_over    adversary  adversary
========  =========  ===========
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from enum import Enum

import numpy as np

from .closed_form import SQRT3, l_edge, u_edge
from .geometry import EDGES, Triangle, heron
from .optimize import multistart_minimize
from .search_sim import StartSpec

RADICAND_TOL = 1e-12


class EmptyFeasible(ValueError):
    pass


@dataclass(frozen=True)
class Interval:
    lb: float
    ub: float


@dataclass(frozen=True)
class BoundsReport:
    a: float
    b: float
    c: float
    L_under: float
    L_over: Interval
    U_under: Interval
    U_over: Interval
    per_edge: dict[str, dict[str, float]] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)

    def scalars(self) -> list[tuple[str, float]]:
        """Flat ``(key, value)`` rows in a fixed order."""
        rows = [("a", self.a), ("b", self.b), ("c", self.c), ("L_under", self.L_under)]
        for name in ("L_over", "U_under", "U_over"):
            iv = getattr(self, name)
            rows += [(f"{name}.lb", iv.lb), (f"{name}.ub", iv.ub)]
        for e in EDGES:
            rows += [(f"l_{e}", self.per_edge[e]["l"]), (f"u_{e}", self.per_edge[e]["u"])]
        return rows


def _root(radicand: float, scale: float) -> float:
    if radicand < -RADICAND_TOL * scale:
        raise ValueError(f"negative radicand {radicand}: input outside the feasible region")
    return math.sqrt(max(radicand, 0.0))


def ad_length(a: float, b: float, c: float) -> float:
    """``|AD|`` for ``D`` on edge ``a`` with ``|BD| = (a - c)/2``."""
    return 0.5 * _root((2 * b * b * (a - c) - (a - 2 * c) * (a + c) ** 2) / a, a * a)


def bd_length(a: float, b: float, c: float) -> float:
    """``|BD|`` for ``D`` on edge ``b`` with ``|AD| = (b - c)/2``."""
    return 0.5 * _root((2 * a * a * (b - c) - (b - 2 * c) * (b + c) ** 2) / b, a * a)


def l_over_ub(a: float, b: float, c: float) -> float:
    tau = heron(a, b, c)
    return min(b + c, ((a + b) ** 2 - c * c + 4.0 * SQRT3 * tau) / (4.0 * b))


def theorem_bounds(t: Triangle) -> BoundsReport:
    a, b, c = t.edges
    half = (a + b + c) / 2.0
    per_edge = {e: {"l": l_edge(t, e), "u": u_edge(t, e)} for e in EDGES}
    return BoundsReport(
        a, b, c,
        L_under=half,
        L_over=Interval(half, l_over_ub(a, b, c)),
        U_under=Interval(min(ad_length(a, b, c) + b, a + c), min(a / 2.0 + b + c / 2.0, a + c)),
        U_over=Interval(a + bd_length(a, b, c), a + (b + c) / 2.0),
        per_edge=per_edge,
    )


@dataclass(frozen=True)
class Adversary:
    start: StartSpec
    lb: float


def adversary_U_under(t: Triangle) -> Adversary:
    """Start point the adversary picks once the algorithm has chosen an edge.

    On ``b`` or ``c`` the adversary starts at vertex ``A`` and forces
    ``a + c``.  On ``a`` it picks ``D`` with ``|BD| = (a - c)/2`` and forces
    ``min(a + c, |AD| + b)``; the algorithm takes the cheaper edge.
    """
    a, b, c = t.edges
    # BD = (a - c)/2 puts D at offset c/2 from the midpoint of a, towards B
    return Adversary(StartSpec("a", c / 2.0), min(a + c, ad_length(a, b, c) + b))


def adversary_U_over(t: Triangle) -> Adversary:
    a, b, c = t.edges
    # AD = (b - c)/2 puts D at offset c/2 from the midpoint of b, towards A
    return Adversary(StartSpec("b", -c / 2.0), a + bd_length(a, b, c))


class Game(str, Enum):
    U_UNDER = "u-under"
    U_OVER = "u-over"


@dataclass(frozen=True)
class RatioCurvePoint:
    t: float
    h: float
    argmin: tuple[float, float, float]


def u_under_ratio(a, b, c):
    with np.errstate(divide="ignore", invalid="ignore"):
        ad = 0.5 * np.sqrt(np.maximum((2 * b * b * (a - c) - (a - 2 * c) * (a + c) ** 2) / a, 0.0))
    return np.minimum(ad + b, a + c) / np.minimum(a / 2 + b + c / 2, a + c)


def u_over_ratio(a, b, c):
    with np.errstate(divide="ignore", invalid="ignore"):
        bd = 0.5 * np.sqrt(np.maximum((2 * a * a * (b - c) - (b - 2 * c) * (b + c) ** 2) / b, 0.0))
    return (bd + a) / (a + (b + c) / 2)


def _curve_slice(game: Game, t: float):
    """``b``-interval and edge map for a fixed ratio ``t`` with ``a = 1``."""
    if game is Game.U_UNDER:
        # c/a = t, b >= c and b^2 + c^2 >= a^2 (non-obtuse)
        lo = max(t, math.sqrt(max(1.0 - t * t, 0.0)))
        return lo, 1.0, lambda b: (1.0, b, t), u_under_ratio
    # c/b = t, a >= b, b + c >= a
    return 1.0 / (1.0 + t), 1.0, lambda b: (1.0, b, t * b), u_over_ratio


def ratio_point(game: Game | str, t: float, starts: int = 64) -> RatioCurvePoint:
    game = Game(game)
    if not 0.0 < t <= 1.0:
        raise EmptyFeasible(f"t = {t} outside (0, 1]")
    lo, hi, edges, ratio = _curve_slice(game, t)
    if lo > hi + 1e-15:
        raise EmptyFeasible(f"no triangle with t = {t} for {game.value}")
    hi = max(hi, lo)
    grid = np.linspace(lo, hi, 4 * starts)

    def f(v: np.ndarray) -> float:
        b = float(v[0])
        if not lo <= b <= hi:
            return math.inf
        val = float(ratio(*edges(b)))
        return val if math.isfinite(val) else math.inf

    values = ratio(*edges(grid))
    values = np.where(np.isfinite(values), values, np.inf)
    best = multistart_minimize(f, grid[:, None], values, [lo], [hi], starts=starts)
    return RatioCurvePoint(t, best.value, tuple(float(v) for v in edges(best.x[0])))


def ratio_curve(game: Game | str, t_grid, starts: int = 64) -> list[RatioCurvePoint]:
    return [ratio_point(game, float(t), starts) for t in t_grid]
