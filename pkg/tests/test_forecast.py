import math
from datetime import date

import pytest
from hypothesis import given, strategies as st

from inference_energy.analysis import analyze_domain
from inference_energy.errors import NonPositiveInput, ZeroSlope
from inference_energy.forecast import (
    Baseline,
    EnergyConstants,
    Scenario,
    crossing_date,
    crossing_year,
    external_baseline,
    percapita_power,
    somatic_baseline,
)
from inference_energy.registry import load_default_bundle
from inference_energy.trends import TrendFit, predict


def test_somatic_examples():
    assert somatic_baseline().joules_per_second == pytest.approx(2000 * 4184 / 86400)
    assert somatic_baseline().joules_per_second == pytest.approx(96.85, abs=0.005)
    assert somatic_baseline(86400 / 4184).joules_per_second == pytest.approx(1.0)
    assert somatic_baseline(1000).joules_per_second == pytest.approx(48.43, abs=0.005)


def test_external_examples():
    assert external_baseline().joules_per_second == pytest.approx(9114.42, abs=0.01)
    assert external_baseline(8766).joules_per_second == pytest.approx(1000.0)
    assert external_baseline(0.008766).joules_per_second == pytest.approx(1e-3)


def test_baselines_reject_nonpositive():
    with pytest.raises(NonPositiveInput):
        somatic_baseline(0)
    with pytest.raises(NonPositiveInput):
        Baseline("x", -1)


def test_constants_are_injectable():
    c = EnergyConstants(seconds_per_year=365 * 86400.0)
    assert external_baseline(constants=c).joules_per_second > external_baseline().joules_per_second


def test_closed_form_crossing():
    fit = TrendFit(slope=1.0, intercept=1 - 2020.0, r_squared=1, n_points=2)
    assert crossing_year(fit, Baseline("b", 100)) == pytest.approx(2021.0)
    c = crossing_date(fit, Baseline("b", 100), as_of=date(2022, 1, 1))
    assert c.in_past and c.date == date(2021, 1, 1)


def test_falling_trend_crossed_in_past():
    fit = TrendFit(slope=-0.5, intercept=3 + 0.5 * 2015, r_squared=1, n_points=2)
    # value at 2015 is 1000, baseline 100 is reached in 2017
    c = crossing_date(fit, Baseline("b", 100), as_of=date(2020, 1, 1))
    assert c.year == pytest.approx(2017.0) and c.in_past


def test_flat_trend_never_crosses():
    with pytest.raises(ZeroSlope):
        crossing_year(TrendFit(0.0, 1.0, 1, 2), somatic_baseline())


def test_crossing_round_trip_on_fixture_fit():
    a = analyze_domain(load_default_bundle(), "CV")
    fit = a.joules_fits["frontier"]
    b = somatic_baseline()
    c = crossing_date(fit, b)
    assert predict(fit, c.year) == pytest.approx(b.joules_per_second, rel=1e-9)
    assert c.date is not None


@given(st.floats(-2, 2).filter(lambda s: abs(s) > 1e-3), st.floats(-2, 4), st.floats(1e-3, 1e5))
def test_crossing_round_trip_property(slope, level, power):
    fit = TrendFit(slope, level - slope * 2015, 1, 2)
    t = crossing_year(fit, Baseline("b", power))
    assert predict(fit, t) == pytest.approx(power, rel=1e-9)


def test_far_crossing_has_no_calendar_date():
    fit = TrendFit(1e-6, 0.0, 1, 2)
    c = crossing_date(fit, somatic_baseline())
    assert c.date is None and math.isfinite(c.year)


def test_percapita_examples():
    p = percapita_power(0.2191, Scenario())
    assert p.per_capita_watts == pytest.approx(0.2191)
    assert p.per_capita_watts / somatic_baseline().joules_per_second == pytest.approx(0.0023, abs=5e-5)
    assert percapita_power(5.0, Scenario(0.0)).per_capita_watts == 0
    car = percapita_power(7.946, Scenario(30))
    assert car.per_capita_watts == pytest.approx(238.38, abs=0.01)
    assert car.per_capita_watts > somatic_baseline().joules_per_second


@given(st.floats(1e-3, 1e3), st.floats(0, 100), st.integers(1, 10**9))
def test_percapita_scales(j, rate, pop):
    p = percapita_power(j, Scenario(rate, pop))
    assert p.aggregate_watts == pytest.approx(p.per_capita_watts * pop)


def test_scenario_validation():
    with pytest.raises(ValueError):
        Scenario(-1)
    with pytest.raises(ValueError):
        Scenario(1, 0)
