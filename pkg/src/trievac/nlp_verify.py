"""Numerical certificates for the inequalities behind the closed forms.

Each claim is one or more small nonlinear programs over edge triples in the
closed triangle polytope (non-negative lengths obeying the weak triangle
inequality), restricted further by ordering and angle constraints.  A claim
is checked by evaluating its objective on a dense feasible grid, then
polishing the best grid points with a derivative-free pattern search.

All objectives are homogeneous, so the search fixes the largest edge to 1 and
sweeps the other two over ``[0, 1]^2``.  Reported arguments are rescaled to
the normalisation the claim is usually quoted in (e.g. ``alpha = 1``).
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Callable

import numpy as np

from .bounds import u_over_ratio, u_under_ratio
from .optimize import multistart_minimize

SQRT3 = math.sqrt(3.0)
SLACK = 1e-9
FEAS_TOL = 1e-12
REFINE_STARTS = 16

Expr = Callable[[np.ndarray, np.ndarray, np.ndarray], np.ndarray]


class UnknownClaim(KeyError):
    pass


class InfeasibleSpace(ValueError):
    pass


# -- expression helpers (vectorised over numpy arrays) -------------------------

def _cos(opposite, s1, s2):
    return (s1 * s1 + s2 * s2 - opposite * opposite) / (2 * s1 * s2)


def _tau(x, y, z):
    p = (x + y + z) / 2
    return np.sqrt(np.maximum(p * (p - x) * (p - y) * (p - z), 0.0))


def _cr1(al, be, ga, x):
    u = ga - 2 * x
    return np.sqrt(np.maximum(be * be + u * u - 2 * be * u * _cos(al, be, ga), 0.0))


def _tau_form(a, b, c, denom):
    return ((a + b) ** 2 - c * c + 4 * SQRT3 * _tau(a, b, c)) / (4 * denom)


# -- feasible sets -------------------------------------------------------------

@dataclass(frozen=True)
class TriangleSpace:
    """Edge triples in the closed polytope plus extra constraints.

    ``ordering`` lists ``(larger, smaller)`` index pairs, ``constraints``
    holds named ``g >= 0`` functions and ``normalize`` is the index fixed to
    1 when reporting arguments.
    """

    names: tuple[str, str, str]
    ordering: tuple[tuple[int, int], ...]
    constraints: tuple[tuple[str, Expr], ...] = ()
    normalize: int = 0

    def describe(self) -> str:
        parts = [f"{self.names[i]}>={self.names[j]}" for i, j in self.ordering]
        parts += [name for name, _ in self.constraints]
        return ", ".join(parts)

    @property
    def dominant(self) -> int:
        for k in range(3):
            if all(self._dominates(k, j) for j in range(3) if j != k):
                return k
        raise ValueError("ordering must single out a largest edge")

    def _dominates(self, hi: int, lo: int) -> bool:
        frontier, seen = [hi], set()
        while frontier:
            v = frontier.pop()
            for i, j in self.ordering:
                if i == v and j not in seen:
                    if j == lo:
                        return True
                    seen.add(j)
                    frontier.append(j)
        return False

    def feasible(self, x, y, z, tol: float = FEAS_TOL) -> np.ndarray:
        v = (x, y, z)
        ok = (x >= -tol) & (y >= -tol) & (z >= -tol)
        ok &= (x + y >= z - tol) & (x + z >= y - tol) & (y + z >= x - tol)
        for i, j in self.ordering:
            ok &= v[i] >= v[j] - tol
        with np.errstate(all="ignore"):
            for _, g in self.constraints:
                ok &= g(x, y, z) >= -tol
        return ok

    def assemble(self, free: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Edge arrays with the dominant edge fixed to 1."""
        d = self.dominant
        others = [k for k in range(3) if k != d]
        cols = [None] * 3
        cols[d] = np.ones(free.shape[:-1])
        cols[others[0]], cols[others[1]] = free[..., 0], free[..., 1]
        return tuple(cols)

    def find_feasible_point(self, side: int = 101) -> tuple[float, float, float]:
        u = np.linspace(0.0, 1.0, side)
        free = np.stack(np.meshgrid(u, u, indexing="ij"), axis=-1).reshape(-1, 2)
        x, y, z = self.assemble(free)
        ok = self.feasible(x, y, z)
        if not ok.any():
            raise InfeasibleSpace(f"no feasible triple in {self.describe()}")
        k = int(np.argmax(ok))
        return float(x[k]), float(y[k]), float(z[k])


GREEK = ("alpha", "beta", "gamma")
LATIN = ("a", "b", "c")
AL, BE, GA = 0, 1, 2


def _nonobtuse(a, b, c):
    return b * b + c * c - a * a


# -- claims --------------------------------------------------------------------

@dataclass(frozen=True)
class Program:
    name: str
    expr: Expr
    sense: str  # "max": claim is max(expr) <= bound; "min": min(expr) >= bound
    bound: float = 0.0
    stated_value: float | None = None
    stated_points: tuple[tuple[float, float, float], ...] = ()
    unique_optimum: bool = False  # compare the argument, not just the value


@dataclass(frozen=True)
class Claim:
    claim_id: str
    statement: str
    space: TriangleSpace
    programs: tuple[Program, ...]


def _u_over_floor() -> float:
    """Third-smallest real root of the floor polynomial for the U_over ratio."""
    roots = np.roots([20, -68, 671, -2776, 2550, -516, -25])
    real = np.sort(roots[np.abs(roots.imag) < 1e-9].real)
    return float(real[2])


def _catalogue() -> dict[str, Claim]:
    agb = TriangleSpace(GREEK, ((AL, GA), (GA, BE)))
    g_dominant = TriangleSpace(GREEK, ((GA, AL), (GA, BE)))
    g_dominant_narrow = TriangleSpace(
        GREEK, ((GA, AL), (GA, BE)), (("cos(A)>=1/2", lambda al, be, ga: _cos(al, be, ga) - 0.5),)
    )
    gab_wide = TriangleSpace(
        GREEK, ((GA, AL), (AL, BE)), (("cos(A)<=1/2", lambda al, be, ga: 0.5 - _cos(al, be, ga)),)
    )
    abc = TriangleSpace(LATIN, ((0, 1), (1, 2)))
    abc_acute = TriangleSpace(LATIN, ((0, 1), (1, 2)), (("b^2+c^2>=a^2", _nonobtuse),))
    abc_wide_b = TriangleSpace(
        LATIN, ((0, 1), (1, 2)), (("cos(B)<=1/2", lambda a, b, c: 0.5 - _cos(b, a, c)),)
    )
    root13 = (1 + math.sqrt(13)) / 4
    u_under_floor = (math.sqrt(10) + 5) / 10

    claims = [
        Claim(
            "f0_nonpositive",
            "slope of alpha/2 + x + CR1(x) at x = 0 is <= 0 when alpha>=gamma>=beta",
            agb,
            (Program("f(0)", lambda al, be, ga: (-al * al + al * ga + be * be - ga * ga) / (al * ga),
                     "max", stated_value=0.0, stated_points=((1, 1, 1),), unique_optimum=True),),
        ),
        Claim(
            "fx0_nonnegative",
            "slope of alpha/2 + x + CR1(x) at the crossing x0 is >= 0 when alpha>=gamma>=beta",
            agb,
            (Program("f(x0)", lambda al, be, ga: (al * al - be * be + be * ga - ga * ga) / (be * ga),
                     "min", stated_value=0.0, stated_points=((1, 1, 1),), unique_optimum=True),),
        ),
        Claim(
            "cosA_gamma_le_half_beta",
            "cos(A) gamma <= beta/2 when alpha>=gamma>=beta",
            agb,
            (Program("cos(A)*gamma - beta/2", lambda al, be, ga: _cos(al, be, ga) * ga - be / 2,
                     "max", stated_value=0.0),),
        ),
        Claim(
            "x0_geq_half_alpha",
            "AR2 meets beta no earlier than x = alpha/2 when alpha>=gamma>=beta",
            agb,
            (Program("gamma/2 + cos(C)*beta - alpha/2",
                     lambda al, be, ga: ga / 2 + _cos(ga, al, be) * be - al / 2, "min", stated_value=0.0),),
        ),
        Claim(
            "T1_half_le_T2_half",
            "T1(alpha/2) <= T2(alpha/2) when gamma dominates",
            g_dominant,
            (Program("T1(alpha/2) - T2(alpha/2)",
                     lambda al, be, ga: (al + _cr1(al, be, ga, al / 2)) - (al + be),
                     "max", stated_value=0.0, stated_points=((1, 5 / 16, 1),)),),
        ),
        Claim(
            "T1_mid_le_half_perimeter",
            "T1(gamma/2 - beta/2) <= (alpha+beta+gamma)/2 when gamma dominates and cos(A) >= 1/2",
            g_dominant_narrow,
            (Program("T1(gamma/2-beta/2) - (alpha+beta+gamma)/2",
                     lambda al, be, ga: al / 2 + (ga - be) / 2 + _cr1(al, be, ga, (ga - be) / 2) - (al + be + ga) / 2,
                     "max", stated_value=0.0, stated_points=((1, 0.5, root13),)),),
        ),
        Claim(
            "CR1_half_leq_beta",
            "CR1(alpha/2) <= beta when gamma dominates",
            g_dominant,
            (Program("CR1(alpha/2) - beta", lambda al, be, ga: _cr1(al, be, ga, al / 2) - be,
                     "max", stated_value=0.0, stated_points=((1, 0.5, 1), (1, 1, 1))),),
        ),
        Claim(
            "x1_le_mid_le_x2",
            "x1 <= gamma/2 - beta/2 <= x2 when gamma>=alpha>=beta and cos(A) <= 1/2",
            gab_wide,
            (
                Program("x1 - (gamma/2 - beta/2)",
                        lambda al, be, ga: (ga * ga - al * al) * ga / (2 * (be * be + ga * ga - al * al)) - (ga - be) / 2,
                        "max", stated_value=0.0,
                        stated_points=((1, (69 - math.sqrt(2101)) / 128, 69 / 64),)),
                Program("(gamma/2 - beta/2) - x2",
                        lambda al, be, ga: (ga - be) / 2 - (al + be) * (al - be) / (2 * ga),
                        "max", stated_value=0.0, stated_points=((1, 0.5, root13),)),
            ),
        ),
        Claim(
            "a_le_b_plus_half_c",
            "a <= b + c/2 for non-obtuse a>=b>=c",
            abc_acute,
            (Program("a - b - c/2", lambda a, b, c: a - b - c / 2, "max", stated_value=0.0),),
        ),
        Claim(
            "la_branch_order",
            "the alpha>=beta>=gamma interior value dominates the tau form on the other half of edge a",
            abc_acute,
            (
                Program("-2b^3 + a^2(2b-c) + 3b^2c + c^3",
                        lambda a, b, c: -2 * b ** 3 + a * a * (2 * b - c) + 3 * b * b * c + c ** 3, "min",
                        stated_value=0.0),
                Program("-a^2 + b^2 - bc + c^2", lambda a, b, c: -a * a + b * b - b * c + c * c, "max",
                        stated_value=0.0),
                Program("b^4 - 2b^3c + bc^3 + c^4 - a^2(b^2-bc+c^2)",
                        lambda a, b, c: b ** 4 - 2 * b ** 3 * c + b * c ** 3 + c ** 4 - a * a * (b * b - b * c + c * c),
                        "max", stated_value=0.0),
                Program("(a^2-b^2+ac+2bc)/(2c) - tau form over 4b",
                        lambda a, b, c: (a * a - b * b + a * c + 2 * b * c) / (2 * c) - _tau_form(a, b, c, b),
                        "min", stated_value=0.0),
            ),
        ),
        Claim(
            "L_under_chain",
            "((a+b)^2 - c^2 + 4 sqrt(3) tau)/(4b) >= (a+b+c)/2 for a>=b>=c",
            abc,
            (Program("tau form over 4b - half perimeter",
                     lambda a, b, c: _tau_form(a, b, c, b) - (a + b + c) / 2, "min", stated_value=0.0),),
        ),
        Claim(
            "L_over_chain",
            "b + c >= ((a+b)^2 - c^2 + 4 sqrt(3) tau)/(4a) for a>=b>=c",
            abc,
            (Program("b + c - tau form over 4a", lambda a, b, c: b + c - _tau_form(a, b, c, a),
                     "min", stated_value=0.0, stated_points=((1, 1, 0),)),),
        ),
        Claim(
            "lb_simplification",
            "a + c and b/2 + a both dominate the tau form over 4a when cos(B) <= 1/2",
            abc_wide_b,
            (
                Program("a + c - tau form over 4a", lambda a, b, c: a + c - _tau_form(a, b, c, a),
                        "min", stated_value=0.0, stated_points=((1, 1, 0),)),
                Program("b/2 + a - tau form over 4a", lambda a, b, c: b / 2 + a - _tau_form(a, b, c, a),
                        "min", stated_value=0.0, stated_points=((1, 1, 1),), unique_optimum=True),
            ),
        ),
        Claim(
            "ratio_floor_U_under",
            "U_under lower/upper bound ratio >= (sqrt(10)+5)/10 over non-obtuse triangles",
            abc_acute,
            (Program("U_under ratio", u_under_ratio, "min", bound=u_under_floor,
                     stated_value=u_under_floor, stated_points=((1, 0.8, 0.6),), unique_optimum=True),),
        ),
        Claim(
            "ratio_floor_U_over",
            "U_over lower/upper bound ratio >= 0.852",
            abc,
            (Program("U_over ratio", u_over_ratio, "min", bound=0.852, stated_value=_u_over_floor()),),
        ),
    ]
    return {c.claim_id: c for c in claims}


CLAIMS = _catalogue()


def claim_ids() -> list[str]:
    return list(CLAIMS)


# -- certification -------------------------------------------------------------

@dataclass
class ProgramResult:
    name: str
    sense: str
    bound: float
    extremum: float
    arg: tuple[float, float, float]
    holds: bool
    slack: float
    grid_side: int
    grid_feasible: int
    refine_starts: int
    evaluations: int
    stated_value: float | None = None
    stated_value_gap: float | None = None
    stated_point_values: list[float] = field(default_factory=list)
    arg_distance: float | None = None


@dataclass
class ClaimCertificate:
    claim_id: str
    statement: str
    space: str
    verdict: str  # "Holds" or "Violated"
    extremum_found: float
    arg: tuple[float, float, float]
    programs: list[ProgramResult]
    witness: tuple[float, float, float] | None = None
    resolution: int = 0

    @property
    def holds(self) -> bool:
        return self.verdict == "Holds"

    def to_dict(self) -> dict:
        return asdict(self)


def _grid(space: TriangleSpace, resolution: int):
    """Free-coordinate grid holding at least ``resolution**3`` feasible points."""
    target = resolution ** 3
    side = int(math.ceil(resolution ** 1.5)) + 1
    for _ in range(8):
        u = np.linspace(0.0, 1.0, side)
        free = np.stack(np.meshgrid(u, u, indexing="ij"), axis=-1).reshape(-1, 2)
        cols = space.assemble(free)
        ok = space.feasible(*cols)
        n_ok = int(ok.sum())
        if n_ok >= target:
            break
        side = int(math.ceil(side * math.sqrt(target / max(n_ok, 1)) * 1.05)) + 1
    return free, cols, ok, side


def _rescale(space: TriangleSpace, point) -> tuple[float, float, float]:
    p = np.asarray(point, dtype=float)
    k = p[space.normalize]
    return tuple(float(v) for v in (p / k if k > 0 else p))


def _solve(space: TriangleSpace, prog: Program, resolution: int) -> ProgramResult:
    sign = -1.0 if prog.sense == "max" else 1.0
    free, cols, ok, side = _grid(space, resolution)
    with np.errstate(all="ignore"):
        raw = prog.expr(*cols)
    vals = np.where(ok & np.isfinite(raw), sign * raw, np.inf)

    def objective(v: np.ndarray) -> float:
        x, y, z = space.assemble(v[None, :])
        if not bool(space.feasible(x, y, z)[0]):
            return math.inf
        with np.errstate(all="ignore"):
            r = float(prog.expr(x, y, z)[0])
        return sign * r if math.isfinite(r) else math.inf

    best = multistart_minimize(objective, free, vals, [0.0, 0.0], [1.0, 1.0],
                               starts=REFINE_STARTS, step=1.0 / (side - 1))
    point = tuple(float(c[0]) for c in space.assemble(best.x[None, :]))
    extremum = float(prog.expr(*(np.array([v]) for v in point))[0])
    slack = (prog.bound - extremum) if prog.sense == "max" else (extremum - prog.bound)
    arg = _rescale(space, point)
    res = ProgramResult(
        name=prog.name, sense=prog.sense, bound=prog.bound, extremum=extremum, arg=arg,
        holds=slack >= -SLACK, slack=slack, grid_side=side, grid_feasible=int(ok.sum()),
        refine_starts=REFINE_STARTS, evaluations=best.evaluations, stated_value=prog.stated_value,
    )
    if prog.stated_value is not None:
        res.stated_value_gap = abs(extremum - prog.stated_value)
    for sp in prog.stated_points:
        with np.errstate(all="ignore"):
            res.stated_point_values.append(float(prog.expr(*(np.array([float(v)]) for v in sp))[0]))
    if prog.unique_optimum and prog.stated_points:
        res.arg_distance = min(math.dist(arg, sp) for sp in prog.stated_points)
    return res


def _unscale(space: TriangleSpace, arg) -> tuple[float, float, float]:
    """Undo ``_rescale``: put the dominant edge back at 1."""
    p = np.asarray(arg, dtype=float)
    return tuple(float(v) for v in p / p[space.dominant])


def _recheck(space: TriangleSpace, prog: Program, point) -> bool:
    """True when ``point`` is feasible and really breaks the claimed bound."""
    x, y, z = (np.array([float(v)]) for v in point)
    if not bool(space.feasible(x, y, z)[0]):
        return False
    with np.errstate(all="ignore"):
        r = float(prog.expr(x, y, z)[0])
    if not math.isfinite(r):
        return False
    return r > prog.bound + SLACK if prog.sense == "max" else r < prog.bound - SLACK


def verify_claim(claim_id: str, resolution: int = 60, space: TriangleSpace | None = None) -> ClaimCertificate:
    """Certify a registered claim, optionally over a caller-supplied ``space``."""
    try:
        claim = CLAIMS[claim_id]
    except KeyError:
        raise UnknownClaim(claim_id) from None
    space = space or claim.space
    space.find_feasible_point()
    results = [_solve(space, prog, resolution) for prog in claim.programs]
    tightest = min(results, key=lambda r: r.slack)
    witness = None
    verdict = "Holds"
    for prog, res in zip(claim.programs, results):
        if not res.holds and _recheck(space, prog, _unscale(space, res.arg)):
            verdict, witness = "Violated", res.arg
            break
    return ClaimCertificate(
        claim_id=claim.claim_id, statement=claim.statement, space=space.describe(),
        verdict=verdict, extremum_found=tightest.extremum, arg=tightest.arg, programs=results,
        witness=witness, resolution=resolution,
    )


def verify_all(resolution: int = 60) -> list[ClaimCertificate]:
    return [verify_claim(cid, resolution) for cid in CLAIMS]
