"""Closed-form worst-case cost of OppositeSearch and its extrema.

Local frame: the agents start on edge ``BC`` of length ``alpha``, a distance
``x`` (``0 <= x <= alpha/2``) from its midpoint towards ``B``.  ``gamma = AB``
is the edge met first by the agent heading for ``B``, and ``beta = CA`` is the
far edge.  Configuration 1 is the regime where that agent reaches ``A`` no
later than the other reaches ``C`` (``x >= gamma/2``); Configuration 2 is the
reverse (``x <= gamma/2``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .geometry import EDGES, Triangle, cosine_law, heron
from .search_sim import EDGE_ENDPOINTS, StartSpec

SQRT3 = math.sqrt(3.0)


class EmptyDomain(ValueError):
    pass


class ConsistencyError(RuntimeError):
    """A relation the analysis guarantees failed numerically."""


class Config(str, Enum):
    CONFIG1 = "config1"
    CONFIG2 = "config2"


class CaseLabel(str, Enum):
    ABG = "alpha>=beta>=gamma"
    AGB = "alpha>=gamma>=beta"
    BAG = "beta>=alpha>=gamma"
    BGA = "beta>=gamma>=alpha"
    GAB = "gamma>=alpha>=beta"
    GBA = "gamma>=beta>=alpha"

    @classmethod
    def of(cls, alpha: float, beta: float, gamma: float) -> "CaseLabel":
        for case in cls:
            if case.holds(alpha, beta, gamma):
                return case
        raise AssertionError("unreachable: some ordering always holds")

    def holds(self, alpha: float, beta: float, gamma: float, tol: float = 0.0) -> bool:
        v = {"alpha": alpha, "beta": beta, "gamma": gamma}
        names = self.value.split(">=")
        return all(v[hi] >= v[lo] - tol for hi, lo in zip(names, names[1:]))


class Kind(str, Enum):
    MIN = "min"
    MAX = "max"


@dataclass(frozen=True)
class Extremum:
    value: float
    x: float
    kind: Kind


def configuration_of(alpha: float, beta: float, gamma: float, x: float) -> Config:
    # x == gamma/2 belongs to both; Configuration 2 by convention
    return Config.CONFIG1 if x > gamma / 2.0 else Config.CONFIG2


def r1r2_distance(alpha: float, beta: float, gamma: float, x: float, cfg: Config) -> float:
    """Distance between the agents when the first of ``A``/``C`` is reached."""
    if Config(cfg) is Config.CONFIG1:
        u, cos_apex = 2.0 * x - gamma, cosine_law(gamma, alpha, beta)  # A to R2, angle at C
    else:
        u, cos_apex = gamma - 2.0 * x, cosine_law(alpha, beta, gamma)  # C to R1, angle at A
    return math.sqrt(max(beta * beta + u * u - 2.0 * beta * u * cos_apex, 0.0))


def t_of_x(alpha: float, beta: float, gamma: float, x: float) -> float:
    cfg = configuration_of(alpha, beta, gamma, x)
    r = r1r2_distance(alpha, beta, gamma, x, cfg)
    if cfg is Config.CONFIG1:
        return alpha / 2.0 + gamma - x + max(r, beta, 2.0 * x - gamma)
    return alpha / 2.0 + x + max(r, beta, gamma - 2.0 * x)


def config_domain(alpha: float, beta: float, gamma: float, cfg: Config) -> tuple[float, float]:
    if Config(cfg) is Config.CONFIG1:
        if gamma >= alpha:
            raise EmptyDomain("Configuration 1 is empty or a single point covered by Configuration 2")
        return gamma / 2.0, alpha / 2.0
    return 0.0, min(alpha, gamma) / 2.0


def tau_min_value(alpha: float, beta: float, gamma: float) -> float:
    """``((alpha+gamma)^2 - beta^2 + 4 sqrt(3) tau) / (4 gamma)``."""
    tau = heron(alpha, beta, gamma)
    return ((alpha + gamma) ** 2 - beta * beta + 4.0 * SQRT3 * tau) / (4.0 * gamma)


def tau_min_value_radical(alpha: float, beta: float, gamma: float) -> float:
    """Same quantity written with the expanded Heron radicand."""
    rad = -((alpha - beta - gamma) * (alpha + beta - gamma) * (alpha - beta + gamma) * (alpha + beta + gamma))
    return (SQRT3 * math.sqrt(max(rad, 0.0)) + (alpha + gamma) ** 2 - beta * beta) / (4.0 * gamma)


def stationary_offset(alpha: float, beta: float, gamma: float) -> float:
    """Zero of d/dx [x + CR1(x)] on the branch below ``gamma/2``."""
    cos_a = cosine_law(alpha, beta, gamma)
    sin_a = math.sqrt(max(1.0 - cos_a * cos_a, 0.0))
    return gamma / 2.0 - beta / 2.0 * (cos_a + sin_a / SQRT3)


def _clamp(x: float, lo: float, hi: float) -> float:
    return min(max(x, lo), hi)


def _endpoint_max(left: tuple[float, float], right: tuple[float, float]) -> Extremum:
    (xl, vl), (xr, vr) = left, right
    return Extremum(vl, xl, Kind.MAX) if vl >= vr else Extremum(vr, xr, Kind.MAX)


def case_extrema(
    alpha: float, beta: float, gamma: float, cfg: Config, case: CaseLabel | None = None
) -> tuple[Extremum, Extremum]:
    """Closed-form ``(min, max)`` of ``t_of_x`` over one configuration's domain."""
    actual = CaseLabel.of(alpha, beta, gamma)
    if case is None:
        case = actual
    elif not CaseLabel(case).holds(alpha, beta, gamma, tol=1e-12 * max(alpha, beta, gamma)):
        raise ValueError(f"edges ({alpha}, {beta}, {gamma}) do not satisfy {case}")
    case = CaseLabel(case)
    cfg = Config(cfg)
    lo, hi = config_domain(alpha, beta, gamma, cfg)
    half = (alpha + beta + gamma) / 2.0
    MIN, MAX = Kind.MIN, Kind.MAX

    if cfg is Config.CONFIG1:
        # alpha > gamma here, and AR2 never exceeds beta
        return (
            Extremum(beta + gamma, alpha / 2.0, MIN),
            Extremum(alpha / 2.0 + beta + gamma / 2.0, gamma / 2.0, MAX),
        )

    if case in (CaseLabel.ABG, CaseLabel.AGB):
        top = _endpoint_max((0.0, 1.5 * alpha), (gamma / 2.0, alpha / 2.0 + beta + gamma / 2.0))
        # CR1 meets beta at x0 = gamma/2 - beta cos(A) = (alpha^2 - beta^2) / (2 gamma)
        x0 = gamma / 2.0 - beta * cosine_law(alpha, beta, gamma)
        if x0 < -1e-10 * alpha:
            raise ConsistencyError(f"negative crossing offset {x0}")
        x1 = stationary_offset(alpha, beta, gamma)
        if x1 > x0 + 1e-10 * alpha:
            raise ConsistencyError(f"stationary point {x1} beyond crossing {x0}")
        if x1 >= 0.0:
            low = Extremum(tau_min_value(alpha, beta, gamma), _clamp(x1, lo, hi), MIN)
        else:
            low = Extremum(1.5 * alpha, 0.0, MIN)
        return low, top

    if case is CaseLabel.BAG:
        return (
            Extremum(alpha / 2.0 + beta, 0.0, MIN),
            Extremum(alpha / 2.0 + beta + gamma / 2.0, gamma / 2.0, MAX),
        )

    if case is CaseLabel.BGA:
        return Extremum(alpha / 2.0 + beta, 0.0, MIN), Extremum(alpha + beta, alpha / 2.0, MAX)

    top = _endpoint_max((0.0, alpha / 2.0 + gamma), (alpha / 2.0, alpha + beta))
    if case is CaseLabel.GAB and cosine_law(alpha, beta, gamma) < 0.5:
        value = max(half, tau_min_value(alpha, beta, gamma))
        return Extremum(value, _clamp(stationary_offset(alpha, beta, gamma), lo, hi), MIN), top
    return Extremum(half, (gamma - beta) / 2.0, MIN), top


# -- bridging the local frame to a concrete triangle --------------------------

_OTHER_EDGE_AT = {
    # (edge, vertex) -> the other edge incident to that vertex
    ("a", "B"): "c", ("a", "C"): "b",
    ("b", "C"): "a", ("b", "A"): "c",
    ("c", "A"): "b", ("c", "B"): "a",
}


@dataclass(frozen=True)
class Labeling:
    alpha: float
    beta: float
    gamma: float
    x: float
    near_vertex: str


def half_edge_labelings(t: Triangle, edge: str) -> list[tuple[float, float, float, str]]:
    """``(alpha, beta, gamma, near_vertex)`` for both halves of ``edge``, positive side first."""
    out = []
    for vertex in EDGE_ENDPOINTS[edge]:
        near = _OTHER_EDGE_AT[(edge, vertex)]
        far = next(e for e in EDGES if e not in (edge, near))
        out.append((t.edge(edge), t.edge(far), t.edge(near), vertex))
    return out


def start_labeling(t: Triangle, start: StartSpec) -> Labeling:
    start.validate(t)
    pos, neg = half_edge_labelings(t, start.edge)
    alpha, beta, gamma, vertex = pos if start.x >= 0 else neg
    return Labeling(alpha, beta, gamma, min(abs(start.x), alpha / 2.0), vertex)


def closed_form_cost(t: Triangle, start: StartSpec) -> float:
    lab = start_labeling(t, start)
    return t_of_x(lab.alpha, lab.beta, lab.gamma, lab.x)


@dataclass(frozen=True)
class EdgeExtremum:
    value: float
    start: StartSpec


def _half_edge_extrema(t: Triangle, edge: str):
    for alpha, beta, gamma, vertex in half_edge_labelings(t, edge):
        sign = 1.0 if vertex == EDGE_ENDPOINTS[edge][0] else -1.0
        for cfg in Config:
            try:
                low, high = case_extrema(alpha, beta, gamma, cfg)
            except EmptyDomain:
                continue
            yield low, high, sign


def edge_extrema(t: Triangle, edge: str) -> tuple[EdgeExtremum, EdgeExtremum]:
    """Best and worst start on ``edge``, composed from both half-edge labelings."""
    if edge not in EDGES:
        raise ValueError(f"unknown edge {edge!r}")
    lows, highs = [], []
    for low, high, sign in _half_edge_extrema(t, edge):
        lows.append(EdgeExtremum(low.value, StartSpec(edge, sign * low.x)))
        highs.append(EdgeExtremum(high.value, StartSpec(edge, sign * high.x)))
    return min(lows, key=lambda e: e.value), max(highs, key=lambda e: e.value)


def l_edge(t: Triangle, edge: str) -> float:
    return edge_extrema(t, edge)[0].value


def u_edge(t: Triangle, edge: str) -> float:
    return edge_extrema(t, edge)[1].value


def l_edge_simplified(t: Triangle, edge: str) -> float:
    a, b, c = t.edges
    tau = heron(a, b, c)
    if edge == "a":
        return min(b + c, ((a + b) ** 2 - c * c + 4.0 * SQRT3 * tau) / (4.0 * b))
    if edge == "b":
        return max((a + b + c) / 2.0, ((a + b) ** 2 - c * c + 4.0 * SQRT3 * tau) / (4.0 * a))
    if edge == "c":
        return (a + b + c) / 2.0
    raise ValueError(f"unknown edge {edge!r}")


def u_edge_simplified(t: Triangle, edge: str) -> float:
    a, b, c = t.edges
    if edge == "a":
        return a / 2.0 + b + c / 2.0
    if edge == "b":
        return a + b / 2.0 + c / 2.0
    if edge == "c":
        return a + c
    raise ValueError(f"unknown edge {edge!r}")
