"""Exponential trend fits, per-year and Pareto frontiers, correlations."""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from datetime import date

import numpy as np

from .errors import (
    DegenerateDates,
    LengthMismatch,
    NonPositiveSlope,
    NonPositiveValue,
    TooFewPoints,
    ZeroVariance,
)
from .registry import ModelRecord, fractional_year

LOG10_2 = math.log10(2.0)


def as_year(x) -> float:
    """Accept a date or an already-fractional year."""
    if isinstance(x, date):
        return fractional_year(x)
    return float(x)


@dataclass(frozen=True)
class TrendFit:
    """log10(metric) = intercept + slope * year."""

    slope: float
    intercept: float
    r_squared: float
    n_points: int
    metric_label: str = ""
    subset_label: str = "all"
    t_min: float | None = None
    t_max: float | None = None

    def covers(self, t) -> bool:
        if self.t_min is None or self.t_max is None:
            return True
        return self.t_min <= as_year(t) <= self.t_max


@dataclass(frozen=True)
class FrontierPoint:
    model_name: str
    x: float
    y: float
    date: date | None = None


def log_linear_fit(points, metric_label: str = "", subset_label: str = "all") -> TrendFit:
    """Least-squares line through (year, log10 value) pairs.

    ``points`` is an iterable of (date-or-year, value) with value > 0.
    """
    pts = list(points)
    if len(pts) < 2:
        raise TooFewPoints(f"need at least 2 points, got {len(pts)}")
    t = np.array([as_year(p[0]) for p in pts], dtype=float)
    v = np.array([p[1] for p in pts], dtype=float)
    if np.any(~(v > 0)):
        raise NonPositiveValue("log-linear fit needs strictly positive values")
    if np.ptp(t) == 0:
        raise DegenerateDates("need at least two distinct dates")
    y = np.log10(v)
    tm, ym = t.mean(), y.mean()
    dt, dy = t - tm, y - ym
    slope = float(dt @ dy / (dt @ dt))
    intercept = float(ym - slope * tm)
    ss_res = float(np.sum((dy - slope * dt) ** 2))
    ss_tot = float(dy @ dy)
    r2 = 1.0 if ss_tot == 0 else min(1.0, max(0.0, 1.0 - ss_res / ss_tot))
    return TrendFit(slope, intercept, r2, len(pts), metric_label, subset_label,
                    float(t.min()), float(t.max()))


def predict(fit: TrendFit, when) -> float:
    return 10.0 ** (fit.intercept + fit.slope * as_year(when))


def doubling_time(fit: TrendFit) -> float:
    """Years for the fitted metric to double."""
    if not fit.slope > 0:
        raise NonPositiveSlope(f"slope {fit.slope} does not grow")
    return LOG10_2 / fit.slope


def _metric_fn(metric):
    if callable(metric):
        return metric
    if metric == "score":
        return lambda m: m.score
    if metric in ("gflops", "gflops_forward"):
        return lambda m: m.gflops_forward
    raise ValueError(f"unknown metric {metric!r}")


def best_per_year(models, metric="score") -> list[ModelRecord]:
    """Top record per calendar year by ``metric`` ("score", "gflops" or a callable).

    Ties go to the cheaper model (lower GFLOPs), then to the name. Records
    without a metric value are skipped. Output is ordered by year.
    """
    key = _metric_fn(metric)
    by_year = defaultdict(list)
    for m in models:
        if key(m) is not None:
            by_year[m.year].append(m)
    return [min(ms, key=lambda m: (-key(m), m.gflops_forward, m.name))
            for _, ms in sorted(by_year.items())]


def pareto_frontier(points) -> list[FrontierPoint]:
    """Points not strictly dominated in (lower x, higher y).

    p dominates q when p.x <= q.x and p.y >= q.y with one inequality strict,
    so exact duplicates are all kept.
    """
    pts = sorted(points, key=lambda p: (p.x, -p.y, p.model_name))
    out = []
    best_y = -math.inf
    i = 0
    while i < len(pts):
        j = i
        while j < len(pts) and pts[j].x == pts[i].x:
            j += 1
        top = pts[i].y  # highest y at this x
        if top > best_y:
            out.extend(p for p in pts[i:j] if p.y == top)
            best_y = top
        i = j
    return out


def pearson_correlation(xs, ys) -> float:
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    if x.shape != y.shape:
        raise LengthMismatch(f"{x.shape} vs {y.shape}")
    if x.size < 2:
        raise TooFewPoints("need at least 2 pairs")
    dx, dy = x - x.mean(), y - y.mean()
    sxx, syy = float(dx @ dx), float(dy @ dy)
    if sxx == 0 or syy == 0:
        raise ZeroVariance("both series need nonzero variance")
    r = float(dx @ dy) / math.sqrt(sxx * syy)
    return max(-1.0, min(1.0, r))


def params_flops_correlation(models, convention: str = "raw") -> float:
    """Pearson r between parameter count and GFLOPs ("raw" or "loglog")."""
    ms = [m for m in models if m.params is not None]
    xs = [m.params for m in ms]
    ys = [m.gflops_forward for m in ms]
    if convention == "loglog":
        xs, ys = np.log10(xs), np.log10(ys)
    elif convention != "raw":
        raise ValueError(f"unknown convention {convention!r}")
    return pearson_correlation(xs, ys)


def compute_equivalents(models, reference_gflops: float, tolerance: float) -> list[ModelRecord]:
    """Models within ``reference * [1 - tol, 1 + tol]`` GFLOPs, by date then name."""
    if tolerance < 0:
        raise ValueError("tolerance must be non-negative")
    lo = reference_gflops * (1.0 - tolerance)
    hi = reference_gflops * (1.0 + tolerance)
    hits = [m for m in models if lo <= m.gflops_forward <= hi]
    return sorted(hits, key=lambda m: (m.release_date, m.name))


def yearly_mean(pairs, geometric: bool = False) -> list[tuple[int, float]]:
    """Mean value per calendar year of (date, value) pairs."""
    by_year = defaultdict(list)
    for d, v in pairs:
        by_year[d.year].append(v)
    out = []
    for year, vs in sorted(by_year.items()):
        if geometric:
            out.append((year, float(10 ** np.mean(np.log10(vs)))))
        else:
            out.append((year, float(np.mean(vs))))
    return out
