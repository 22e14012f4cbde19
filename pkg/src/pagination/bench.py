"""Benchmark harness: run a solver roster, measure statistical difficulty,
correlate it with instance descriptors and draw the curves."""

from __future__ import annotations

import csv
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .core import Instance, Pagination, cardinality
from .genetic import GaConfig
from .instances.generator import derive_seed
from .solvers import DEFAULT_ROSTER, solve


class ZeroVarianceError(ValueError):
    """Pearson's r is undefined for a constant series."""


@dataclass
class SolverOutcome:
    solver_id: str
    page_count: int
    wall_time: float = 0.0
    pagination: Pagination | None = None


@dataclass
class BenchRecord:
    instance_id: str
    capacity: int
    symbol_count: int
    tile_count: int
    cardinality: int
    avg_multiplicity: float
    outcomes: list[SolverOutcome] = field(default_factory=list)

    @property
    def difficulty(self) -> float:
        return difficulty([o.page_count for o in self.outcomes])

    @property
    def best(self) -> int:
        return min(o.page_count for o in self.outcomes)

    def pages(self, solver: str) -> int:
        for o in self.outcomes:
            if o.solver_id == solver:
                return o.page_count
        raise KeyError(solver)


def difficulty(page_counts: Sequence[int]) -> float:
    """Mean page count minus the minimum one."""
    if len(page_counts) < 2:
        raise ValueError("difficulty needs at least two outcomes")
    return sum(page_counts) / len(page_counts) - min(page_counts)


def average_multiplicity(instance: Instance) -> float:
    return cardinality(instance, instance) / instance.n_symbols


def pearson_r(xs: Sequence[float], ys: Sequence[float]) -> float:
    if len(xs) != len(ys) or len(xs) < 2:
        raise ValueError("need two series of equal length >= 2")
    if len(set(xs)) < 2 or len(set(ys)) < 2:
        raise ZeroVarianceError("a series has zero variance")
    return statistics.correlation([float(x) for x in xs], [float(y) for y in ys])


def _bench_one(args) -> BenchRecord:
    instance_id, instance, roster, seed, ga_config, keep = args
    rec = BenchRecord(
        instance_id,
        instance.capacity,
        instance.n_symbols,
        instance.n_tiles,
        cardinality(instance, instance),
        average_multiplicity(instance),
    )
    for solver in roster:
        t0 = time.perf_counter()
        p = solve(instance, solver, seed=derive_seed(seed, instance_id, solver), ga_config=ga_config)
        elapsed = time.perf_counter() - t0
        rec.outcomes.append(SolverOutcome(solver, len(p), elapsed, p if keep else None))
    return rec


def run_benchmark(
    instances: Iterable[tuple[str, Instance]],
    roster: Sequence[str] = DEFAULT_ROSTER,
    seed: int = 0,
    jobs: int = 1,
    ga_config: GaConfig | None = None,
    keep_paginations: bool = False,
) -> list[BenchRecord]:
    """Run every solver of ``roster`` on every instance.

    Randomised solvers get a seed derived from ``(seed, instance id, solver)``
    so results do not depend on ``jobs``.  Records come back sorted by
    average multiplicity, then instance id.
    """
    tasks = [(iid, inst, tuple(roster), seed, ga_config, keep_paginations) for iid, inst in instances]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(_bench_one, tasks, chunksize=max(1, len(tasks) // (jobs * 8))))
    else:
        records = [_bench_one(t) for t in tasks]
    records.sort(key=lambda r: (r.avg_multiplicity, r.instance_id))
    return records


@dataclass
class WindowPoint:
    avg_multiplicity: float
    difficulty: float
    quality: dict[str, float]


def moving_window(records: Sequence[BenchRecord], window: int) -> list[WindowPoint]:
    """Means over sliding windows of ``window`` records sorted by average
    multiplicity.  Quality of a solver is best page count / its page count."""
    if window < 1:
        raise ValueError("window must be positive")
    recs = sorted(records, key=lambda r: (r.avg_multiplicity, r.instance_id))
    if len(recs) < window:
        return []
    solvers = [o.solver_id for o in recs[0].outcomes]
    mult = [r.avg_multiplicity for r in recs]
    diff = [r.difficulty for r in recs]
    qual = {s: [r.best / r.pages(s) for r in recs] for s in solvers}

    def running(xs):
        out, acc = [], sum(xs[:window])
        out.append(acc / window)
        for i in range(window, len(xs)):
            acc += xs[i] - xs[i - window]
            out.append(acc / window)
        return out

    m, d = running(mult), running(diff)
    q = {s: running(v) for s, v in qual.items()}
    return [WindowPoint(m[i], d[i], {s: q[s][i] for s in solvers}) for i in range(len(m))]


PREDICTORS = {
    "symbols": lambda r: r.symbol_count,
    "symbols_x_tiles": lambda r: r.symbol_count * r.tile_count,
    "tiles": lambda r: r.tile_count,
    "cardinality": lambda r: r.cardinality,
    "avg_multiplicity": lambda r: r.cardinality / r.symbol_count,
}


def predictor_report(records: Sequence[BenchRecord]) -> dict[str, float]:
    """Pearson r between difficulty and each candidate predictor."""
    if len(records) < 3:
        raise ValueError("at least three records are needed for a correlation report")
    diff = [r.difficulty for r in records]
    return {name: pearson_r([f(r) for r in records], diff) for name, f in PREDICTORS.items()}


# -- CSV ----------------------------------------------------------------------

BASE_COLUMNS = ["instance_id", "capacity", "symbols", "tiles", "cardinality", "avg_multiplicity"]


def _column(solver: str) -> str:
    return solver.replace("-", "_") + "_pages"


def write_records_csv(records: Sequence[BenchRecord], path) -> None:
    """Write records to a path or an open text stream."""
    if hasattr(path, "write"):
        _write_csv(records, path)
    else:
        with open(path, "w", newline="") as fh:
            _write_csv(records, fh)


def _write_csv(records, fh) -> None:
    solvers = [o.solver_id for o in records[0].outcomes] if records else list(DEFAULT_ROSTER)
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(BASE_COLUMNS + [_column(s) for s in solvers] + ["difficulty"])
    for r in records:
        w.writerow(
            [r.instance_id, r.capacity, r.symbol_count, r.tile_count, r.cardinality,
             repr(r.avg_multiplicity)]
            + [r.pages(s) for s in solvers]
            + [repr(r.difficulty)]
        )


def read_records_csv(path) -> list[BenchRecord]:
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    header, body = rows[0], rows[1:]
    if header[: len(BASE_COLUMNS)] != BASE_COLUMNS or header[-1] != "difficulty":
        raise ValueError(f"{path}: not a benchmark CSV")
    solver_cols = header[len(BASE_COLUMNS):-1]
    solvers = [c[: -len("_pages")].replace("_", "-") for c in solver_cols]
    out = []
    for row in body:
        rec = BenchRecord(row[0], int(row[1]), int(row[2]), int(row[3]), int(row[4]), float(row[5]))
        for s, v in zip(solvers, row[len(BASE_COLUMNS):-1]):
            rec.outcomes.append(SolverOutcome(s, int(v)))
        out.append(rec)
    return out


# -- SVG ----------------------------------------------------------------------

COLOURS = ["#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2"]


def svg_chart(
    series: dict[str, list[tuple[float, float]]],
    title: str,
    xlabel: str,
    ylabel: str,
    lines: bool = True,
    width: int = 720,
    height: int = 440,
) -> str:
    """A small self-contained SVG line or scatter chart."""
    pts = [p for s in series.values() for p in s]
    if not pts:
        pts = [(0.0, 0.0), (1.0, 1.0)]
    x0, x1 = min(p[0] for p in pts), max(p[0] for p in pts)
    y0, y1 = min(p[1] for p in pts), max(p[1] for p in pts)
    if x1 == x0:
        x1 = x0 + 1
    if y1 == y0:
        y1 = y0 + 1
    left, right, top, bottom = 60, 150, 30, 50
    pw, ph = width - left - right, height - top - bottom

    def sx(x):
        return left + (x - x0) / (x1 - x0) * pw

    def sy(y):
        return top + ph - (y - y0) / (y1 - y0) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'font-family="sans-serif" font-size="11">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<text x="{width / 2}" y="18" text-anchor="middle" font-size="13">{title}</text>',
        f'<line x1="{left}" y1="{top + ph}" x2="{left + pw}" y2="{top + ph}" stroke="black"/>',
        f'<line x1="{left}" y1="{top}" x2="{left}" y2="{top + ph}" stroke="black"/>',
        f'<text x="{left + pw / 2}" y="{height - 10}" text-anchor="middle">{xlabel}</text>',
        f'<text x="15" y="{top + ph / 2}" text-anchor="middle" '
        f'transform="rotate(-90 15 {top + ph / 2})">{ylabel}</text>',
    ]
    for k in range(5):
        xv = x0 + (x1 - x0) * k / 4
        yv = y0 + (y1 - y0) * k / 4
        out.append(f'<text x="{sx(xv):.1f}" y="{top + ph + 15}" text-anchor="middle">{xv:.3g}</text>')
        out.append(f'<text x="{left - 5}" y="{sy(yv) + 4:.1f}" text-anchor="end">{yv:.3g}</text>')
    for n, (name, s) in enumerate(series.items()):
        colour = COLOURS[n % len(COLOURS)]
        if lines and len(s) > 1:
            path = " ".join(f"{sx(x):.1f},{sy(y):.1f}" for x, y in s)
            out.append(f'<polyline fill="none" stroke="{colour}" stroke-width="1.5" points="{path}"/>')
        else:
            out.extend(f'<circle cx="{sx(x):.1f}" cy="{sy(y):.1f}" r="1.5" fill="{colour}"/>' for x, y in s)
        ly = top + 15 * n + 10
        out.append(f'<rect x="{left + pw + 10}" y="{ly - 8}" width="10" height="10" fill="{colour}"/>')
        out.append(f'<text x="{left + pw + 25}" y="{ly + 1}">{name}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def difficulty_chart(records: Sequence[BenchRecord], window: int) -> str:
    scatter = {"instances": [(r.avg_multiplicity, r.difficulty) for r in records]}
    if window > 1:
        pts = moving_window(records, window)
        scatter["moving mean"] = [(p.avg_multiplicity, p.difficulty) for p in pts]
    return svg_chart(scatter, "Statistical difficulty by average multiplicity",
                     "average multiplicity", "difficulty", lines=False)


def quality_chart(records: Sequence[BenchRecord], window: int) -> str:
    pts = moving_window(records, window)
    solvers = list(pts[0].quality) if pts else []
    series = {s: [(p.avg_multiplicity, p.quality[s]) for p in pts] for s in solvers}
    return svg_chart(series, "Relative quality (best size / size)",
                     "average multiplicity", "relative quality")


def rank_summary(records: Sequence[BenchRecord]) -> dict[str, float]:
    """Fraction of instances on which each solver reaches the best page count."""
    if not records:
        return {}
    solvers = [o.solver_id for o in records[0].outcomes]
    return {s: sum(r.pages(s) == r.best for r in records) / len(records) for s in solvers}

