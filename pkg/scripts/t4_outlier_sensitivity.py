"""How much the T4 mixed-precision point moves the efficiency trend and the energy estimates."""

from inference_energy.config import AnalysisConfig
from inference_energy.energy import annotate_energy, efficiency_trend
from inference_energy.forecast import crossing_date, somatic_baseline
from inference_energy.hardware import build_adapted_table
from inference_energy.registry import filter_models, load_default_bundle
from inference_energy.trends import doubling_time, log_linear_fit


def main():
    bundle = load_default_bundle()
    points = build_adapted_table(bundle)
    outliers = AnalysisConfig().efficiency_outliers
    for dom in ("CV", "NLP"):
        models = filter_models(bundle, dom)
        for label, excl in (("with T4", ()), ("without T4", outliers)):
            fit = efficiency_trend(points, dom, exclude=excl)
            est = annotate_energy(models, fit, fit)
            jfit = log_linear_fit([(m.release_date, e.joules) for m, e in zip(models, est)])
            c = crossing_date(jfit, somatic_baseline())
            print(f"{dom:<4} {label:<11} eff slope={fit.slope:.4f} doubling={doubling_time(fit):.2f} y "
                  f"r2={fit.r_squared:.3f} | all-model Joules slope={jfit.slope:+.4f} "
                  f"somatic crossing {c.year:.1f}")


if __name__ == "__main__":
    main()
