"""Figure series files and the plain-text summary.

Each figure is written as JSON lines: a header object (``"kind": "figure"``)
with axes and fit summaries, then one ``"kind": "point"`` object per point.
Floats are rounded to 6 significant digits and keys are sorted, so identical
inputs give byte-identical files.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

from .analysis import DomainAnalysis, analyze_domain, reproducing_conventions
from .config import AnalysisConfig
from .forecast import external_baseline, somatic_baseline
from .formatting import round_half_up, sig6
from .hardware import adapted_table_rows, build_adapted_table, speedup_summaries, ADAPTED_COLUMNS
from .registry import DatasetBundle, Domain
from .trends import TrendFit, doubling_time


@dataclass
class FigureSeries:
    figure_id: str
    x_label: str
    y_label: str
    x_log: bool = False
    y_log: bool = False
    points: list[dict] = field(default_factory=list)
    fits: list[TrendFit] = field(default_factory=list)

    def add(self, x, y, label, series="data", **extra):
        self.points.append(dict(x=x, y=y, label=label, series=series, **extra))

    def validate(self):
        if not self.points:
            raise ValueError(f"{self.figure_id}: no points")
        for p in self.points:
            if (self.x_log and not p["x"] > 0) or (self.y_log and not p["y"] > 0):
                raise ValueError(f"{self.figure_id}: non-positive value on a log axis ({p['label']})")


def _clean(obj):
    if isinstance(obj, float):
        return sig6(obj) if math.isfinite(obj) else None
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    return obj


def fit_summary(fit: TrendFit) -> dict:
    d = dict(metric=fit.metric_label, subset=fit.subset_label, slope=fit.slope,
             intercept=fit.intercept, r_squared=fit.r_squared, n_points=fit.n_points)
    if fit.slope > 0:
        d["doubling_time_years"] = doubling_time(fit)
    return d


def dumps_series(fig: FigureSeries) -> str:
    fig.validate()
    header = dict(kind="figure", figure_id=fig.figure_id,
                  axes=dict(x=fig.x_label, y=fig.y_label, x_log=fig.x_log, y_log=fig.y_log),
                  fits=[fit_summary(f) for f in fig.fits], n_points=len(fig.points))
    lines = [json.dumps(_clean(header), sort_keys=True)]
    lines += [json.dumps(_clean(dict(kind="point", **p)), sort_keys=True) for p in fig.points]
    return "\n".join(lines) + "\n"


def load_series(path) -> tuple[dict, list[dict]]:
    with open(path, encoding="utf-8") as f:
        rows = [json.loads(line) for line in f if line.strip()]
    return rows[0], rows[1:]


# --- figure builders -------------------------------------------------------

def _membership(names, name):
    return "frontier" if name in names else "other"


def cv_figures(a: DomainAnalysis, config: AnalysisConfig) -> list[FigureSeries]:
    frontier = {m.name for m in a.frontier}
    pareto_g = {p.model_name for p in a.pareto_gflops}
    pareto_j = {p.model_name for p in a.pareto_joules}
    energy = {e.model_name: e for e in a.energy}
    figs = []

    f = FigureSeries("fig1_cv_params_vs_gflops", "parameters (M)", "GFLOPs", True, True)
    for m in a.models:
        if m.params is not None:
            f.add(m.params, m.gflops_forward, m.name, m.architecture.value)
    figs.append(f)

    f = FigureSeries("fig2_cv_accuracy_vs_date", "release year", "Top-1 accuracy (%)")
    for m in a.models:
        if m.score is not None:
            f.add(m.t, m.score, m.name, "extra_data" if m.uses_extra_data else "imagenet_only",
                  size=m.gflops_forward)
    figs.append(f)

    f = FigureSeries("fig3_cv_gflops_vs_date", "release year", "GFLOPs", y_log=True,
                     fits=[a.gflops_fits["frontier"], a.gflops_fits["all"]])
    for m in a.models:
        f.add(m.t, m.gflops_forward, m.name, _membership(frontier, m.name))
    figs.append(f)

    f = FigureSeries("fig4_cv_accuracy_vs_gflops", "GFLOPs", "Top-1 accuracy (%)", x_log=True)
    for m in a.models:
        if m.score is not None:
            f.add(m.gflops_forward, m.score, m.name, "pareto" if m.name in pareto_g else "other",
                  year=m.year)
    figs.append(f)

    figs.append(_joules_vs_date("fig9_cv_joules_vs_date", a, frontier))

    f = FigureSeries("fig11_cv_accuracy_vs_joules", "Joules per forward pass", "Top-1 accuracy (%)",
                     x_log=True)
    for m in a.models:
        if m.score is not None:
            f.add(energy[m.name].joules, m.score, m.name,
                  "pareto" if m.name in pareto_j else "other", year=m.year)
    figs.append(f)

    figs.append(_joules_vs_baselines("fig13_cv_joules_vs_baselines", a, frontier, config))
    return figs


def nlp_figures(a: DomainAnalysis, config: AnalysisConfig) -> list[FigureSeries]:
    frontier = {m.name for m in a.frontier}
    pareto_g = {p.model_name for p in a.pareto_gflops}
    pareto_j = {p.model_name for p in a.pareto_joules}
    energy = {e.model_name: e for e in a.energy}
    figs = []

    f = FigureSeries("fig5_nlp_glue_vs_gflops", "GFLOPs", "GLUE score", x_log=True)
    for m in a.models:
        if m.score is not None:
            f.add(m.gflops_forward, m.score, m.name, "pareto" if m.name in pareto_g else "other",
                  year=m.year, input_tokens=m.input_tokens)
    figs.append(f)

    f = FigureSeries("fig6_nlp_gflops_vs_date", "release year", "GFLOPs", y_log=True,
                     fits=[a.gflops_fits["frontier"], a.gflops_fits["all"]])
    for m in a.models:
        f.add(m.t, m.gflops_forward, m.name, _membership(frontier, m.name),
              input_tokens=m.input_tokens)
    figs.append(f)

    figs.append(_joules_vs_date("fig10_nlp_joules_vs_date", a, frontier))

    f = FigureSeries("fig12_nlp_glue_vs_joules", "Joules per forward pass", "GLUE score", x_log=True)
    for m in a.models:
        if m.score is not None:
            f.add(energy[m.name].joules, m.score, m.name,
                  "pareto" if m.name in pareto_j else "other", year=m.year)
    figs.append(f)

    figs.append(_joules_vs_baselines("fig14_nlp_joules_vs_baselines", a, frontier, config))
    return figs


def _joules_vs_date(fig_id, a: DomainAnalysis, frontier) -> FigureSeries:
    f = FigureSeries(fig_id, "release year", "Joules per forward pass", y_log=True,
                     fits=[a.joules_fits["frontier"], a.joules_fits["all"]])
    for e, m in zip(a.energy, a.models):
        f.add(m.t, e.joules, m.name, _membership(frontier, m.name))
    for kind, rows in a.yearly_joules.items():
        for year, value in rows:
            f.add(year + 0.5, value, f"{year} {kind} mean", f"yearly_{kind}_mean")
    return f


def _joules_vs_baselines(fig_id, a: DomainAnalysis, frontier, config) -> FigureSeries:
    f = FigureSeries(fig_id, "release year", "Joules (per forward pass / per second)", y_log=True,
                     fits=[a.joules_fits["frontier"], a.joules_fits["all"]])
    for e, m in zip(a.energy, a.models):
        f.add(m.t, e.joules, m.name, _membership(frontier, m.name))
    t0, t1 = min(m.t for m in a.models), max(m.t for m in a.models)
    for b in (somatic_baseline(constants=config.constants), external_baseline(constants=config.constants)):
        for t in (t0, t1):
            f.add(t, b.joules_per_second, f"{b.label} baseline (J/s)", b.label)
    return f


# --- summary ---------------------------------------------------------------

def _fit_line(fit: TrendFit) -> str:
    dbl = f"{doubling_time(fit):.3f} y" if fit.slope > 0 else "n/a"
    return (f"  {fit.metric_label:<16} {fit.subset_label:<10} slope={fit.slope:+.6f}/y "
            f"intercept={fit.intercept:.6f} r2={fit.r_squared:.4f} n={fit.n_points} doubling={dbl}")


def gpu_section(bundle: DatasetBundle, config: AnalysisConfig) -> list[str]:
    lines = ["Mixed-precision speed-ups (mean over benchmark rows)"]
    for s in speedup_summaries(bundle):
        lines.append(f"  {s.gpu_name:<12} {s.precision:<6} {s.domain:<4} mean={s.mean_speedup:.4f} "
                     f"n={s.sample_count} baseline={s.baseline}")
    lines.append("")
    lines.append("Adapted GPU table")
    lines.append("  " + ",".join(ADAPTED_COLUMNS))
    for row in adapted_table_rows(build_adapted_table(bundle, config.adaptation)):
        lines.append("  " + ",".join(row))
    return lines


def domain_section(a: DomainAnalysis, config: AnalysisConfig) -> list[str]:
    d = a.domain.value
    lines = [f"== {d}: {len(a.models)} models =="]
    lines.append(f"Frontier ({config.frontier_metric[d]} per year): " +
                 ", ".join(f"{m.year}:{m.name}" for m in a.frontier))
    lines.append("Trend fits (log10 metric vs year)")
    for fit in (*a.gflops_fits.values(), a.efficiency_fit, *a.joules_fits.values()):
        lines.append(_fit_line(fit))
    if a.efficiency_fit_no_outlier is not None:
        lines.append(_fit_line(a.efficiency_fit_no_outlier))
    lines.append("Pareto frontier, score vs GFLOPs: " + ", ".join(p.model_name for p in a.pareto_gflops))
    lines.append("Pareto frontier, score vs Joules: " + ", ".join(p.model_name for p in a.pareto_joules))
    lines.append("Params/GFLOPs Pearson correlation")
    for (arch, conv), r in sorted(a.correlations.items()):
        lines.append(f"  {arch:<12} {conv:<7} r={r:.4f}")
    if a.domain is Domain.CV:
        conv = reproducing_conventions(a.correlations, config)
        lines.append("  reproducing convention: " + (", ".join(conv) if conv else "none"))
    if a.equivalents:
        lines.append(f"Models within {config.equivalence_tolerance:g}x of {config.reference_model} GFLOPs")
        for m in a.equivalents:
            score = f"{m.score:.2f}" if m.score is not None else "-"
            lines.append(f"  {m.name:<32} {score:>6} {m.gflops_forward:>8.2f} {m.year}")
    lines.append("Yearly mean Joules (arithmetic / geometric)")
    geo = dict(a.yearly_joules["geometric"])
    for year, v in a.yearly_joules["arithmetic"]:
        lines.append(f"  {year} {v:.6g} / {geo[year]:.6g}")
    lines.append("Baseline crossings (Joules per forward pass = baseline J/s)")
    for (subset, label), c in sorted(a.crossings.items()):
        when = c.date.isoformat() if c.date else "out of range"
        lines.append(f"  {subset:<9} {label:<9} year={c.year:.3f} date={when} past={c.in_past}")
    return lines


def write_report(bundle: DatasetBundle, out_dir, domains=(Domain.CV, Domain.NLP),
                 config: AnalysisConfig = AnalysisConfig()) -> list[Path]:
    """Run the analyses and write figure files plus ``summary.txt``.

    Domains without models are noted in the summary and produce no figures.
    Returns the written paths, summary last.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    sb, eb = somatic_baseline(constants=config.constants), external_baseline(constants=config.constants)
    summary = [
        "Inference energy report",
        f"records: {len(bundle.models)} models, {len(bundle.gpus)} GPU entries, "
        f"{len(bundle.benchmarks)} benchmark rows",
        f"baselines: somatic {round_half_up(sb.joules_per_second, 2)} J/s, "
        f"external {round_half_up(eb.joules_per_second, 2)} J/s",
        "",
    ]
    if bundle.gpus:
        summary += gpu_section(bundle, config) + [""]
    points = build_adapted_table(bundle, config.adaptation) if bundle.gpus else []
    for domain in domains:
        domain = Domain(domain)
        if not any(m.domain is domain for m in bundle.models):
            summary += [f"== {domain.value}: 0 models, nothing to analyze ==", ""]
            continue
        a = analyze_domain(bundle, domain, config, points)
        figs = cv_figures(a, config) if domain is Domain.CV else nlp_figures(a, config)
        for fig in figs:
            path = out_dir / f"{fig.figure_id}.jsonl"
            path.write_text(dumps_series(fig), encoding="utf-8")
            written.append(path)
        summary += domain_section(a, config) + [""]
    path = out_dir / "summary.txt"
    path.write_text("\n".join(summary), encoding="utf-8")
    written.append(path)
    return written
