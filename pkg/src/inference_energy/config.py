"""Analysis settings shared by the report pipeline and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field

from .forecast import DEFAULT_CONSTANTS, EnergyConstants
from .hardware import AdaptationConfig


def _frontier_metrics():
    # CV: most accurate model per year. NLP: most demanding model per year,
    # since few NLP records carry a GLUE score.
    return {"CV": "score", "NLP": "gflops"}


@dataclass(frozen=True)
class AnalysisConfig:
    frontier_metric: dict = field(default_factory=_frontier_metrics)
    adaptation: AdaptationConfig = field(default_factory=AdaptationConfig)
    # adapted points dropped for the outlier-sensitivity efficiency fit
    efficiency_outliers: frozenset = frozenset({("T4", "Mixed")})
    constants: EnergyConstants = DEFAULT_CONSTANTS
    reference_model: str = "AlexNet"
    equivalence_tolerance: float = 1.2
    # published params/GFLOPs correlations the report checks conventions against
    published_correlations: dict = field(
        default_factory=lambda: {"Transformer": (0.994, 0.02), "CNN": (0.772, 0.05)})
