"""Command-line interface: bound reports, oracle checks, ratio curves and claim verification."""

from __future__ import annotations

import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, is_dataclass
from enum import Enum

import click
import numpy as np

from .bounds import EmptyFeasible, Game, ratio_point, theorem_bounds
from .closed_form import closed_form_cost
from .geometry import EDGES, GeometryError, make_triangle
from .nlp_verify import CLAIMS, UnknownClaim, verify_claim
from .search_sim import InvalidStart, StartSpec, worst_case_oracle

EXIT_INPUT = 2
EXIT_IO = 3
EXIT_VIOLATED = 1


class Format(str, Enum):
    JSON = "json"
    CSV = "csv"
    TEXT = "text"


def _fmt(v) -> str:
    if isinstance(v, float):
        return "%.17g" % v
    return str(v)


def _flatten(obj, prefix: str = "") -> list[tuple[str, object]]:
    if is_dataclass(obj):
        obj = asdict(obj)
    if isinstance(obj, dict):
        rows = []
        for k, v in obj.items():
            rows += _flatten(v, f"{prefix}.{k}" if prefix else str(k))
        return rows
    if isinstance(obj, (list, tuple)):
        rows = []
        for i, v in enumerate(obj):
            rows += _flatten(v, f"{prefix}[{i}]")
        return rows
    return [(prefix, obj)]


def _emit(payload: dict, fmt: Format) -> None:
    if fmt is Format.JSON:
        # json writes floats with repr, which round-trips exactly
        click.echo(json.dumps(payload, indent=2))
        return
    rows = _flatten(payload)
    if fmt is Format.CSV:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["key", "value"])
        for k, v in rows:
            w.writerow([k, _fmt(v)])
        click.echo(buf.getvalue(), nl=False)
        return
    width = max(len(k) for k, _ in rows)
    for k, v in rows:
        click.echo(f"{k.ljust(width)}  {_fmt(v)}")


def _fail(msg: str, code: int) -> None:
    click.echo(f"error: {msg}", err=True)
    sys.exit(code)


def _jobs(jobs: int | None) -> int:
    if jobs is None:
        jobs = int(os.environ.get("TRIEVAC_JOBS", "1") or 1)
    return max(jobs, 1)


def _map(fn, items, jobs: int) -> list:
    """Order-preserving map, in worker processes when ``jobs > 1``."""
    if jobs <= 1 or len(items) <= 1:
        return [fn(i) for i in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def _triangle(a: float, b: float, c: float):
    try:
        return make_triangle(a, b, c)
    except GeometryError as exc:
        kind = "obtuse" if "obtuse" in type(exc).__name__.lower() else "degenerate"
        _fail(f"{kind}: {exc}", EXIT_INPUT)


format_option = click.option(
    "--format", "fmt", type=click.Choice([f.value for f in Format]), default="json", show_default=True
)
raw_option = click.option("--raw-labels", is_flag=True, help="Address edges in input order (a, b, c = 1st, 2nd, 3rd argument).")
jobs_option = click.option("--jobs", type=int, default=None, help="Worker processes (default: $TRIEVAC_JOBS or 1).")


@click.group()
def main() -> None:
    """Worst-case evacuation of two wireless agents from a non-obtuse triangle."""


@main.command()
@click.argument("a", type=float)
@click.argument("b", type=float)
@click.argument("c", type=float)
@format_option
@raw_option
def bounds(a: float, b: float, c: float, fmt: str, raw_labels: bool) -> None:
    """Bounds for the four start-point games on triangle A B C."""
    t = _triangle(a, b, c)
    report = theorem_bounds(t).to_dict()
    if raw_labels:
        canon = report["per_edge"]
        report["per_edge"] = {EDGES[i]: canon[t.raw_label(i)] for i in range(3)}
        report["label_map"] = {EDGES[i]: t.raw_label(i) for i in range(3)}
    _emit(report, Format(fmt))


@main.command()
@click.argument("a", type=float)
@click.argument("b", type=float)
@click.argument("c", type=float)
@click.argument("edge", type=click.Choice(list(EDGES)))
@click.argument("x", type=float)
@click.argument("n", type=int, default=20000)
@format_option
@raw_option
def oracle(a, b, c, edge, x, n, fmt, raw_labels) -> None:
    """Compare the brute-force sweep with the closed form at start (EDGE, X)."""
    if n < 100:
        _fail("n must be at least 100", EXIT_INPUT)
    t = _triangle(a, b, c)
    if raw_labels:
        edge = t.raw_label(EDGES.index(edge))
    start = StartSpec(edge, x)
    try:
        out = worst_case_oracle(t, start, n)
        cf = closed_form_cost(t, start)
    except InvalidStart as exc:
        _fail(f"invalid start: {exc}", EXIT_INPUT)
    payload = {
        "triangle": {"a": t.a, "b": t.b, "c": t.c},
        "start": {"edge": edge, "x": x},
        "oracle": {
            "cost": out.cost,
            "worst_exit_s": out.worst_exit.s,
            "resolution": out.resolution,
            "tolerance": out.tolerance,
        },
        "closed_form": cf,
        "gap": abs(cf - out.cost),
    }
    _emit(payload, Format(fmt))


def _curve_row(job):
    game, t, starts = job
    p = ratio_point(game, t, starts)
    return (p.t, p.h, *p.argmin)


@main.command()
@click.argument("game", type=click.Choice([g.value for g in Game]))
@click.argument("t_min", type=float)
@click.argument("t_max", type=float)
@click.argument("steps", type=int)
@click.argument("out_path", type=click.Path(dir_okay=False))
@click.option("--starts", type=int, default=64, show_default=True)
@jobs_option
def curve(game, t_min, t_max, steps, out_path, starts, jobs) -> None:
    """Write the ratio curve h(t) for GAME to OUT_PATH as CSV."""
    if not 0.0 < t_min <= t_max <= 1.0:
        _fail("need 0 < t_min <= t_max <= 1", EXIT_INPUT)
    if steps < 1:
        _fail("steps must be positive", EXIT_INPUT)
    grid = np.linspace(t_min, t_max, steps) if steps > 1 else np.array([t_min])
    try:
        rows = _map(_curve_row, [(game, float(t), starts) for t in grid], _jobs(jobs))
    except EmptyFeasible as exc:
        _fail(str(exc), EXIT_INPUT)
    try:
        with open(out_path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["t", "h", "argmin_a", "argmin_b", "argmin_c"])
            for row in rows:
                w.writerow([_fmt(float(v)) for v in row])
    except OSError as exc:
        _fail(f"cannot write {out_path}: {exc}", EXIT_IO)
    click.echo(f"wrote {len(rows)} rows to {out_path}; min h = {_fmt(min(r[1] for r in rows))}")


def _verify_one(job):
    return verify_claim(*job)


@main.command()
@click.argument("claim")
@click.argument("resolution", type=int, default=60)
@format_option
@jobs_option
def verify(claim, resolution, fmt, jobs) -> None:
    """Check CLAIM (or 'all') from the inequality catalogue."""
    ids = list(CLAIMS) if claim == "all" else [claim]
    for cid in ids:
        if cid not in CLAIMS:
            _fail(f"unknown claim {cid!r}; known: {', '.join(CLAIMS)}", EXIT_INPUT)
    try:
        certs = _map(_verify_one, [(cid, resolution) for cid in ids], _jobs(jobs))
    except UnknownClaim as exc:
        _fail(f"unknown claim {exc}", EXIT_INPUT)
    fmt = Format(fmt)
    if fmt is Format.TEXT:
        for cert in certs:
            click.echo(f"{cert.claim_id}: {cert.verdict}  extremum={_fmt(cert.extremum_found)}  arg={cert.arg}")
            if cert.witness is not None:
                click.echo(f"  witness: {cert.witness}")
    else:
        _emit({"certificates": [c.to_dict() for c in certs]}, fmt)
    bad = [c for c in certs if not c.holds]
    for c in bad:
        click.echo(f"VIOLATED {c.claim_id} at {c.witness}", err=True)
    if bad:
        sys.exit(EXIT_VIOLATED)


def random_nonobtuse(rng: np.random.Generator):
    """Edges of a random non-obtuse triangle, largest edge 1."""
    while True:
        b, c = rng.uniform(0.05, 1.0, 2)
        b, c = max(b, c), min(b, c)
        if b * b + c * c >= 1.0 and b + c > 1.0:
            return 1.0, float(b), float(c)


def _audit(job):
    a, b, c, x_frac, edge_idx, n = job
    t = make_triangle(a, b, c)
    edge = EDGES[edge_idx]
    start = StartSpec(edge, x_frac * t.edge(edge) / 2.0)
    out = worst_case_oracle(t, start, n)
    cf = closed_form_cost(t, start)
    return abs(cf - out.cost), out.tolerance


@main.command("sweep-random")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--count", type=int, default=100, show_default=True)
@click.option("--starts", type=int, default=5, show_default=True)
@click.option("--n", "n", type=int, default=20000, show_default=True)
@format_option
@jobs_option
def sweep_random(seed, count, starts, n, fmt, jobs) -> None:
    """Audit the closed form against the oracle on random triangles."""
    rng = np.random.default_rng(seed)
    work = []
    for _ in range(count):
        a, b, c = random_nonobtuse(rng)
        for _ in range(starts):
            work.append((a, b, c, float(rng.uniform(-1, 1)), int(rng.integers(3)), n))
    results = _map(_audit, work, _jobs(jobs))
    ratio = [gap / tol for gap, tol in results]
    payload = {
        "seed": seed,
        "cases": len(results),
        "max_gap": max(g for g, _ in results),
        "max_gap_over_tolerance": max(ratio),
        "failures": sum(r > 1.0 for r in ratio),
    }
    _emit(payload, Format(fmt))
    if payload["failures"]:
        sys.exit(EXIT_VIOLATED)


if __name__ == "__main__":
    main()
