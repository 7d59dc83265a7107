"""Params/GFLOPs Pearson correlation per architecture under raw and log-log conventions."""

from inference_energy.analysis import reproducing_conventions
from inference_energy.config import AnalysisConfig
from inference_energy.registry import Architecture, filter_models, load_default_bundle
from inference_energy.trends import params_flops_correlation


def main():
    cfg = AnalysisConfig()
    models = filter_models(load_default_bundle(), "CV")
    table = {}
    for arch in Architecture:
        sub = [m for m in models if m.architecture is arch and m.params is not None]
        if len(sub) < 3:
            continue
        for conv in ("raw", "loglog"):
            table[(arch.value, conv)] = r = params_flops_correlation(sub, conv)
            target = cfg.published_correlations.get(arch.value)
            note = f"  target {target[0]} +/- {target[1]}" if target else ""
            print(f"{arch.value:<12} n={len(sub):<3} {conv:<7} r={r:.4f}{note}")
    print("conventions reproducing every target:", reproducing_conventions(table, cfg) or "none")


if __name__ == "__main__":
    main()
