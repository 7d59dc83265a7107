"""Human energy baselines and when fitted Joules-per-inference trends reach them."""

from __future__ import annotations

import math
from dataclasses import dataclass
from datetime import date

from .errors import NonPositiveInput, ZeroSlope
from .registry import date_from_year, fractional_year
from .trends import TrendFit


@dataclass(frozen=True)
class EnergyConstants:
    joules_per_kcal: float = 4184.0  # dietary kilocalorie
    seconds_per_day: float = 86_400.0
    joules_per_kwh: float = 3.6e6
    seconds_per_year: float = 31_557_600.0  # Julian year
    somatic_kcal_per_day: float = 2000.0
    external_kwh_per_year: float = 79_897.0  # USA per capita, 2019


DEFAULT_CONSTANTS = EnergyConstants()


@dataclass(frozen=True)
class Baseline:
    label: str  # somatic, external or custom
    joules_per_second: float

    def __post_init__(self):
        if not self.joules_per_second > 0:
            raise NonPositiveInput("baseline power must be positive")


@dataclass(frozen=True)
class Scenario:
    inferences_per_capita_per_second: float = 1.0
    population: int = 1

    def __post_init__(self):
        rate = self.inferences_per_capita_per_second
        if not (math.isfinite(rate) and rate >= 0):
            raise ValueError(f"inference rate must be finite and >= 0, got {rate}")
        if self.population < 1:
            raise ValueError("population must be >= 1")


@dataclass(frozen=True)
class Crossing:
    year: float
    date: date | None  # None when the year falls outside the calendar range
    in_past: bool


@dataclass(frozen=True)
class PowerDraw:
    per_capita_watts: float
    aggregate_watts: float


def somatic_baseline(kcal_per_day: float = DEFAULT_CONSTANTS.somatic_kcal_per_day,
                     constants: EnergyConstants = DEFAULT_CONSTANTS) -> Baseline:
    if not kcal_per_day > 0:
        raise NonPositiveInput("kcal_per_day must be positive")
    return Baseline("somatic", kcal_per_day * constants.joules_per_kcal / constants.seconds_per_day)


def external_baseline(kwh_per_year: float = DEFAULT_CONSTANTS.external_kwh_per_year,
                      constants: EnergyConstants = DEFAULT_CONSTANTS) -> Baseline:
    if not kwh_per_year > 0:
        raise NonPositiveInput("kwh_per_year must be positive")
    return Baseline("external", kwh_per_year * constants.joules_per_kwh / constants.seconds_per_year)


def crossing_year(fit: TrendFit, baseline: Baseline) -> float:
    if fit.slope == 0:
        raise ZeroSlope("a flat trend never crosses a different level")
    return (math.log10(baseline.joules_per_second) - fit.intercept) / fit.slope


def crossing_date(fit: TrendFit, baseline: Baseline, as_of: date | None = None) -> Crossing:
    """Date at which the fitted trend equals the baseline power.

    The result may lie in the past relative to ``as_of`` (default: today).
    """
    t = crossing_year(fit, baseline)
    ref = fractional_year(as_of or date.today())
    try:
        when = date_from_year(t)
    except (OverflowError, ValueError):
        when = None
    return Crossing(t, when, t < ref)


def percapita_power(joules_per_inference: float, scenario: Scenario) -> PowerDraw:
    if not joules_per_inference > 0:
        raise NonPositiveInput("joules_per_inference must be positive")
    per = joules_per_inference * scenario.inferences_per_capita_per_second
    return PowerDraw(per, per * scenario.population)
