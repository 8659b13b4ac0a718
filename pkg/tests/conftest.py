import itertools
import math

import numpy as np
import pytest
from hypothesis import strategies as st

from trievac.geometry import make_triangle

ACCEPTANCE_LINES = []


def random_triangles(rng, count, scale=(0.5, 3.0)):
    """Seeded non-obtuse triangles by rejection on (b, c) with a = 1, then rescaled."""
    out = []
    while len(out) < count:
        b, c = np.sort(rng.uniform(0.02, 1.0, 2))[::-1]
        if b * b + c * c >= 1.0 and b + c > 1.0:
            k = rng.uniform(*scale)
            out.append(make_triangle(k, k * b, k * c))
    return out


def local_frames(t):
    """All six (alpha, beta, gamma) labelings of a triangle's edges."""
    return sorted(set(itertools.permutations(t.edges)))


def golden_min(f, lo, hi, tol=1e-13):
    """Golden-section search on a bracket known to hold a single minimum."""
    g = (math.sqrt(5) - 1) / 2
    x1, x2 = hi - g * (hi - lo), lo + g * (hi - lo)
    f1, f2 = f(x1), f(x2)
    while hi - lo > tol:
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - g * (hi - lo)
            f1 = f(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + g * (hi - lo)
            f2 = f(x2)
    x = (lo + hi) / 2
    return f(x), x


def scan_extrema(f, lo, hi, n=2001):
    """Independent (min, argmin, max, argmax) of a piecewise-smooth convex function."""
    xs = np.linspace(lo, hi, n)
    ys = np.array([f(x) for x in xs])
    k = int(np.argmin(ys))
    vmin, xmin = golden_min(f, xs[max(k - 1, 0)], xs[min(k + 1, n - 1)])
    if ys[k] < vmin:
        vmin, xmin = float(ys[k]), float(xs[k])
    j = int(np.argmax(ys))  # convex: the max sits at an endpoint
    return vmin, xmin, float(ys[j]), float(xs[j])


@st.composite
def nonobtuse_edges(draw):
    """Edge triple (a, b, c), a largest, via angles A >= B >= C with A <= pi/2."""
    A = draw(st.floats(math.pi / 3, math.pi / 2))
    lo, hi = (math.pi - A) / 2, min(A, math.pi - A - 1e-3)
    B = lo + draw(st.floats(0.0, 1.0)) * max(hi - lo, 0.0)
    C = math.pi - A - B
    k = draw(st.floats(0.1, 10.0))
    return tuple(sorted((k * math.sin(A), k * math.sin(B), k * math.sin(C)), reverse=True))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def acceptance():
    """Record one PASS/FAIL line per acceptance criterion."""

    def record(number, title, passed, detail=""):
        line = f"[{'PASS' if passed else 'FAIL'}] criterion {number}: {title}" + (f" ({detail})" if detail else "")
        ACCEPTANCE_LINES.append(line)
        print(line)
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
