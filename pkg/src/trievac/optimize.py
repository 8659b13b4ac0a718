"""Derivative-free box search: grid multistart followed by pattern refinement."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable

import numpy as np


@dataclass(frozen=True)
class SearchResult:
    value: float
    x: np.ndarray
    evaluations: int


def pattern_descent(
    f: Callable[[np.ndarray], float],
    x0: np.ndarray,
    lower: np.ndarray,
    upper: np.ndarray,
    step: float,
    tol: float = 1e-12,
    max_iter: int = 20000,
) -> SearchResult:
    """Minimise ``f`` from ``x0`` by coordinate (and diagonal) moves with shrinking steps.

    ``f`` returns ``inf`` (or nan) outside the feasible set, so moves never
    leave it.  Diagonal directions let the search slide along the 45 degree
    facets that ordering and triangle constraints produce.
    """
    dim = len(x0)
    dirs = [np.eye(dim)[i] * s for i in range(dim) for s in (1.0, -1.0)]
    for i, j in itertools.combinations(range(dim), 2):
        for si, sj in itertools.product((1.0, -1.0), repeat=2):
            d = np.zeros(dim)
            d[i], d[j] = si, sj
            dirs.append(d / np.sqrt(2.0))
    x = np.asarray(x0, dtype=float).copy()
    fx = f(x)
    evals = 1
    it = 0
    while step > tol and it < max_iter:
        it += 1
        moved = False
        for d in dirs:
            y = np.clip(x + step * d, lower, upper)
            fy = f(y)
            evals += 1
            if fy < fx:
                x, fx, moved = y, fy, True
                break
        if not moved:
            step *= 0.5
    return SearchResult(float(fx), x, evals)


def multistart_minimize(
    f: Callable[[np.ndarray], float],
    candidates: np.ndarray,
    values: np.ndarray,
    lower,
    upper,
    starts: int = 16,
    step: float | None = None,
    tol: float = 1e-12,
) -> SearchResult:
    """Refine the ``starts`` best grid candidates and keep the overall best."""
    lower = np.asarray(lower, dtype=float)
    upper = np.asarray(upper, dtype=float)
    finite = np.isfinite(values)
    if not finite.any():
        raise ValueError("no feasible candidate")
    cand, vals = candidates[finite], values[finite]
    order = np.argsort(vals, kind="stable")[:starts]
    if step is None:
        step = float(np.max(upper - lower)) / max(len(cand) ** (1.0 / candidates.shape[1]), 1.0)
    best = SearchResult(float(vals[order[0]]), cand[order[0]].copy(), len(values))
    evals = len(values)
    for k in order:
        res = pattern_descent(f, cand[k], lower, upper, step, tol)
        evals += res.evaluations
        if res.value < best.value:
            best = SearchResult(res.value, res.x, 0)
    return SearchResult(best.value, best.x, evals)
