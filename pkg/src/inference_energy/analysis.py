"""End-to-end analysis of one domain: compute trend, efficiency, energy, forecasts."""

from __future__ import annotations

from dataclasses import dataclass, field
from .config import AnalysisConfig
from .energy import EnergyEstimate, annotate_energy, efficiency_trend
from .errors import AnalysisError, TooFewPoints
from .forecast import Crossing, crossing_date, external_baseline, somatic_baseline
from .hardware import EfficiencyPoint, build_adapted_table, domain_points
from .registry import Architecture, DatasetBundle, Domain, ModelRecord, filter_models
from .trends import (
    FrontierPoint,
    TrendFit,
    best_per_year,
    compute_equivalents,
    log_linear_fit,
    pareto_frontier,
    params_flops_correlation,
    yearly_mean,
)


@dataclass
class DomainAnalysis:
    domain: Domain
    models: list[ModelRecord]
    frontier: list[ModelRecord]
    gflops_fits: dict[str, TrendFit]
    efficiency_points: list[EfficiencyPoint]
    efficiency_fit: TrendFit
    efficiency_fit_no_outlier: TrendFit | None
    energy: list[EnergyEstimate]
    joules_fits: dict[str, TrendFit]
    pareto_gflops: list[FrontierPoint]
    pareto_joules: list[FrontierPoint]
    yearly_joules: dict[str, list]
    crossings: dict[tuple[str, str], Crossing] = field(default_factory=dict)
    correlations: dict[tuple[str, str], float] = field(default_factory=dict)
    equivalents: list[ModelRecord] = field(default_factory=list)

    def energy_of(self, name: str) -> EnergyEstimate:
        for e in self.energy:
            if e.model_name == name:
                return e
        raise KeyError(name)


def frontier_models(models, domain: Domain | str, config: AnalysisConfig = AnalysisConfig()):
    return best_per_year(models, config.frontier_metric[Domain(domain).value])


def analyze_domain(bundle: DatasetBundle, domain: Domain | str,
                   config: AnalysisConfig = AnalysisConfig(),
                   points: list[EfficiencyPoint] | None = None) -> DomainAnalysis:
    domain = Domain(domain)
    models = filter_models(bundle, domain)
    if len(models) < 2:
        raise TooFewPoints(f"{domain.value}: need at least 2 models, have {len(models)}")
    if points is None:
        points = build_adapted_table(bundle, config.adaptation)
    dpoints = domain_points(points, domain)

    frontier = frontier_models(models, domain, config)
    gflops_fits = {
        "frontier": log_linear_fit([(m.release_date, m.gflops_forward) for m in frontier],
                                   f"{domain.value} GFLOPs", "frontier"),
        "all": log_linear_fit([(m.release_date, m.gflops_forward) for m in models],
                              f"{domain.value} GFLOPs", "all"),
    }
    eff_fit = efficiency_trend(dpoints, domain)
    try:
        eff_fit_clean = efficiency_trend(dpoints, domain, exclude=config.efficiency_outliers,
                                         subset_label="no_outlier")
    except AnalysisError:
        eff_fit_clean = None

    fits = {Domain.CV: None, Domain.NLP: None, domain: eff_fit}
    energy = annotate_energy(models, fits[Domain.CV], fits[Domain.NLP])
    by_name = {e.model_name: e for e in energy}
    joules_fits = {
        "frontier": log_linear_fit([(m.release_date, by_name[m.name].joules) for m in frontier],
                                   f"{domain.value} Joules", "frontier"),
        "all": log_linear_fit([(m.release_date, by_name[m.name].joules) for m in models],
                              f"{domain.value} Joules", "all"),
    }

    scored = [m for m in models if m.score is not None]
    pareto_g = pareto_frontier([FrontierPoint(m.name, m.gflops_forward, m.score, m.release_date)
                                for m in scored]) if scored else []
    pareto_j = pareto_frontier([FrontierPoint(m.name, by_name[m.name].joules, m.score, m.release_date)
                                for m in scored]) if scored else []

    pairs = [(m.release_date, by_name[m.name].joules) for m in models]
    yearly = {"arithmetic": yearly_mean(pairs), "geometric": yearly_mean(pairs, geometric=True)}

    out = DomainAnalysis(domain, models, frontier, gflops_fits, dpoints, eff_fit, eff_fit_clean,
                         energy, joules_fits, pareto_g, pareto_j, yearly)

    as_of = max(m.release_date for m in models)
    for b in (somatic_baseline(constants=config.constants),
              external_baseline(constants=config.constants)):
        for subset, fit in joules_fits.items():
            if fit.slope != 0:
                out.crossings[(subset, b.label)] = crossing_date(fit, b, as_of=as_of)

    for arch in Architecture:
        sub = [m for m in models if m.architecture is arch and m.params is not None]
        for conv in ("raw", "loglog"):
            try:
                out.correlations[(arch.value, conv)] = params_flops_correlation(sub, conv)
            except AnalysisError:
                pass

    ref = next((m for m in models if m.name == config.reference_model), None)
    if ref is not None:
        out.equivalents = compute_equivalents(models, ref.gflops_forward, config.equivalence_tolerance)
    return out


def reproducing_conventions(correlations: dict, config: AnalysisConfig = AnalysisConfig()) -> list[str]:
    """Conventions under which every published correlation is matched within its tolerance."""
    ok = []
    for conv in ("raw", "loglog"):
        hits = []
        for arch, (value, tol) in config.published_correlations.items():
            r = correlations.get((arch, conv))
            hits.append(r is not None and abs(r - value) <= tol)
        if all(hits):
            ok.append(conv)
    return ok

