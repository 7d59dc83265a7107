"""Joules per forward pass from model GFLOPs and hardware GFLOPS/W.

GFLOPS per Watt is the same quantity as GFLOPs per Joule, so the energy of
one forward pass is simply GFLOPs / (GFLOPS/W). The efficiency is read from
an exponential trend fitted to the GPU points, evaluated at the model's
release date.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import date
from enum import Enum

from .errors import NonPositiveInput, TooFewPoints
from .hardware import EfficiencyPoint, domain_points
from .registry import Domain, ModelRecord
from .trends import TrendFit, log_linear_fit, predict


class EfficiencySource(str, Enum):
    TREND_FIT = "trend_fit"
    NEAREST_GPU = "nearest_gpu"
    EXPLICIT = "explicit"


@dataclass(frozen=True)
class EnergyEstimate:
    model_name: str
    joules: float
    efficiency_used: float  # GFLOPS/W
    efficiency_date: date
    efficiency_source: EfficiencySource
    extrapolated: bool = False
    gflops_forward: float | None = None
    input_tokens: int | None = None

    @property
    def joules_per_token(self) -> float | None:
        if self.input_tokens:
            return self.joules / self.input_tokens
        return None


def efficiency_trend(points, domain: Domain | str, exclude=(), subset_label: str = "all") -> TrendFit:
    """Fit GFLOPS/W against launch date over one domain's point set.

    ``exclude`` holds (gpu_name, precision) pairs to drop from the adapted
    points, e.g. ``{("T4", "Mixed")}`` for the outlier-free variant.
    """
    exclude = set(exclude)
    pts = [p for p in domain_points(points, domain)
           if not (p.adapted and (p.gpu_name, p.precision) in exclude)]
    label = f"{Domain(domain).value} GFLOPS/W"
    return log_linear_fit([(p.launch_date, p.gflops_per_watt) for p in pts], label, subset_label)


def efficiency_at(fit: TrendFit, when) -> float:
    return predict(fit, when)


def energy_per_inference(gflops_forward: float, efficiency: float) -> float:
    if not (gflops_forward > 0 and efficiency > 0):
        raise NonPositiveInput(f"gflops and efficiency must be positive, got {gflops_forward}, {efficiency}")
    return gflops_forward / efficiency


def nearest_gpu_efficiency(points, when: date) -> EfficiencyPoint:
    """The point launched closest to ``when``; ties go to the more efficient one."""
    pts = list(points)
    if not pts:
        raise TooFewPoints("no efficiency points to choose from")
    return min(pts, key=lambda p: (abs((p.launch_date - when).days), -p.gflops_per_watt, p.gpu_name))


def estimate_model(model: ModelRecord, fit: TrendFit) -> EnergyEstimate:
    eff = efficiency_at(fit, model.release_date)
    return EnergyEstimate(
        model_name=model.name,
        joules=energy_per_inference(model.gflops_forward, eff),
        efficiency_used=eff,
        efficiency_date=model.release_date,
        efficiency_source=EfficiencySource.TREND_FIT,
        extrapolated=not fit.covers(model.release_date),
        gflops_forward=model.gflops_forward,
        input_tokens=model.input_tokens,
    )


def annotate_energy(models, cv_fit: TrendFit | None, nlp_fit: TrendFit | None) -> list[EnergyEstimate]:
    """Energy estimate per model using its domain's efficiency trend, in input order."""
    fits = {Domain.CV: cv_fit, Domain.NLP: nlp_fit}
    out = []
    for m in models:
        fit = fits[m.domain]
        if fit is None:
            raise TooFewPoints(f"no efficiency trend for {m.domain.value}")
        out.append(estimate_model(m, fit))
    return out


def annotate_energy_nearest(models, points) -> list[EnergyEstimate]:
    """Sensitivity variant: use the nearest-in-time GPU of the model's domain."""
    out = []
    for m in models:
        p = nearest_gpu_efficiency(domain_points(points, m.domain), m.release_date)
        out.append(EnergyEstimate(m.name, energy_per_inference(m.gflops_forward, p.gflops_per_watt),
                                  p.gflops_per_watt, p.launch_date, EfficiencySource.NEAREST_GPU,
                                  False, m.gflops_forward, m.input_tokens))
    return out
