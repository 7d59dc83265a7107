"""Command-line entry point.

Exit codes: 0 success, 1 dataset validation failure, 2 analysis precondition
failure (e.g. too few points to fit).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .analysis import analyze_domain, frontier_models
from .config import AnalysisConfig
from .errors import AnalysisError, BundleValidationError
from .flops import (
    FlopsConvention,
    ScaleFactors,
    compound_scale_flops,
    is_quadratic,
    normalize_flops,
    resolution_exponent,
    resolution_scale_flops,
)
from .formatting import display_gflops
from .forecast import Scenario, crossing_date, external_baseline, percapita_power, somatic_baseline
from .hardware import adapted_table_rows, build_adapted_table, write_adapted_table, ADAPTED_COLUMNS
from .registry import DATA_ENV_VAR, default_paths, filter_models, load_bundle
from .report import write_report
from .trends import doubling_time

EXIT_OK, EXIT_INVALID, EXIT_ANALYSIS = 0, 1, 2


def _pair(text):
    a, _, b = text.partition(":")
    try:
        return float(a), float(b)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A:B, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--models", type=Path, help="models.csv (default: bundled data)")
    common.add_argument("--gpus", type=Path, help="gpus.csv")
    common.add_argument("--benchmarks", type=Path, help="benchmarks.csv")
    common.add_argument("--domain", choices=["cv", "nlp"], help="restrict to one domain")
    common.add_argument("--out", type=Path, help="output directory or file")
    common.add_argument("--subset", choices=["frontier", "all"], default="frontier")

    p = argparse.ArgumentParser(
        prog="inference-energy",
        description=f"Inference compute and energy trend analysis. Set {DATA_ENV_VAR} to "
                    "point at a directory holding models.csv, gpus.csv and benchmarks.csv.")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("validate", parents=[common], help="validate the dataset files")
    sub.add_parser("report", parents=[common], help="write figure series and summary")
    sub.add_parser("gpu-table", parents=[common], help="print or write the adapted GPU table")
    fit = sub.add_parser("fit", parents=[common], help="fit an exponential trend")
    fit.add_argument("--metric", choices=["gflops", "joules"], default="gflops")
    par = sub.add_parser("pareto", parents=[common], help="list Pareto-frontier models")
    par.add_argument("--metric", choices=["gflops", "joules"], default="gflops")
    sub.add_parser("energy", parents=[common], help="Joules per forward pass per model")
    fc = sub.add_parser("forecast", parents=[common], help="baseline crossings and per-capita power")
    fc.add_argument("--joules", type=float, help="Joules per inference for the scenario")
    fc.add_argument("--rate", type=float, default=1.0, help="inferences per person per second")
    fc.add_argument("--population", type=int, default=1)

    est = sub.add_parser("estimate-flops", help="scale GFLOPs of a base network")
    est.add_argument("--base", type=float, required=True, help="base GFLOPs as printed")
    est.add_argument("--convention", choices=[c.value for c in FlopsConvention],
                     default=FlopsConvention.OP_AS_ONE.value,
                     help="counting convention of --base (madd_pair_as_one doubles it)")
    est.add_argument("--d", type=float, help="depth ratio")
    est.add_argument("--w", type=float, help="width ratio")
    est.add_argument("--r", type=float, help="resolution ratio")
    est.add_argument("--res", type=_pair, help="BASE:TARGET resolution for quadratic scaling")
    est.add_argument("--check", type=_pair, nargs=2, metavar="RES:GFLOPS",
                     help="two measured (resolution, GFLOPs) pairs to verify quadratic scaling")
    return p


def _bundle(args):
    defaults = default_paths()
    return load_bundle(args.models or defaults[0], args.gpus or defaults[1],
                       args.benchmarks or defaults[2])


def _domains(args):
    return [args.domain.upper()] if args.domain else ["CV", "NLP"]


def cmd_validate(args) -> int:
    try:
        bundle = _bundle(args)
    except BundleValidationError as e:
        for issue in e.issues:
            print(issue)
        return EXIT_INVALID
    print(f"ok: {len(bundle.models)} models, {len(bundle.gpus)} GPU entries, "
          f"{len(bundle.benchmarks)} benchmark rows")
    return EXIT_OK


def cmd_report(args) -> int:
    out = args.out or Path("report")
    paths = write_report(_bundle(args), out, _domains(args))
    for p in paths:
        print(p)
    return EXIT_OK


def cmd_gpu_table(args) -> int:
    points = build_adapted_table(_bundle(args))
    if args.out:
        path = args.out / "adapted_gpu_table.csv" if args.out.is_dir() else args.out
        print(write_adapted_table(points, path))
    else:
        print(",".join(ADAPTED_COLUMNS))
        for row in adapted_table_rows(points):
            print(",".join(row))
    return EXIT_OK


def cmd_fit(args) -> int:
    bundle = _bundle(args)
    for d in _domains(args):
        a = analyze_domain(bundle, d)
        fits = a.gflops_fits if args.metric == "gflops" else a.joules_fits
        fit = fits[args.subset]
        dbl = f"{doubling_time(fit):.4f}" if fit.slope > 0 else "n/a"
        print(f"{d} {args.metric} {args.subset}: slope={fit.slope:.6f} log10/yr "
              f"intercept={fit.intercept:.6f} r2={fit.r_squared:.4f} n={fit.n_points} "
              f"doubling_years={dbl}")
    return EXIT_OK


def cmd_pareto(args) -> int:
    bundle = _bundle(args)
    for d in _domains(args):
        a = analyze_domain(bundle, d)
        front = a.pareto_gflops if args.metric == "gflops" else a.pareto_joules
        print(f"# {d} Pareto frontier: score vs {args.metric}")
        for p in front:
            print(f"{p.model_name}\t{p.x:.6g}\t{p.y:g}")
    return EXIT_OK


def cmd_energy(args) -> int:
    bundle = _bundle(args)
    for d in _domains(args):
        a = analyze_domain(bundle, d)
        print(f"# {d}: model, date, GFLOPs, GFLOPS/W, Joules, extrapolated")
        for m, e in zip(a.models, a.energy):
            print(f"{m.name}\t{m.release_date.isoformat()}\t{m.gflops_forward:g}\t"
                  f"{e.efficiency_used:.4f}\t{e.joules:.6g}\t{e.extrapolated}")
    return EXIT_OK


def cmd_forecast(args) -> int:
    bundle = _bundle(args)
    baselines = (somatic_baseline(), external_baseline())
    for b in baselines:
        print(f"{b.label} baseline: {b.joules_per_second:.2f} J/s")
    for d in _domains(args):
        a = analyze_domain(bundle, d)
        fit = a.joules_fits[args.subset]
        as_of = max(m.release_date for m in a.models)
        for b in baselines:
            c = crossing_date(fit, b, as_of=as_of)
            when = c.date.isoformat() if c.date else "out of range"
            print(f"{d} {args.subset} Joules trend reaches {b.label} at {c.year:.2f} ({when})"
                  f"{' [past]' if c.in_past else ''}")
        if args.joules is None:
            top = frontier_models(a.models, d)[-1]
            joules, name = a.energy_of(top.name).joules, top.name
        else:
            joules, name = args.joules, "given"
        draw = percapita_power(joules, Scenario(args.rate, args.population))
        share = draw.per_capita_watts / baselines[0].joules_per_second
        print(f"{d} scenario ({name}, {joules:.4g} J x {args.rate:g}/s): "
              f"{draw.per_capita_watts:.4g} W per person ({share:.2%} of somatic), "
              f"{draw.aggregate_watts:.4g} W for population {args.population}")
    return EXIT_OK


def cmd_estimate_flops(args) -> int:
    base = normalize_flops(args.base, args.convention)
    if args.res is not None:
        if args.check:
            (ra, fa), (rb, fb) = args.check
            k = resolution_exponent(fa, fb, ra, rb)
            print(f"measured resolution exponent: {k:.4f}")
            if not is_quadratic(k):
                print("warning: FLOPs do not scale quadratically with resolution; "
                      "estimate is unreliable", file=sys.stderr)
        lo, hi = args.res
        value = resolution_scale_flops(base, lo, hi)
        inputs = f"base={base:g} res={lo:g}->{hi:g}"
    elif None not in (args.d, args.w, args.r):
        value = compound_scale_flops(base, ScaleFactors(args.d, args.w, args.r))
        inputs = f"base={base:g} d={args.d:g} w={args.w:g} r={args.r:g}"
    else:
        print("error: give either --res BASE:TARGET or all of --d --w --r", file=sys.stderr)
        return EXIT_ANALYSIS
    print(f"{inputs} -> {display_gflops(value)} GFLOPs ({value:.6g})")
    return EXIT_OK


COMMANDS = {
    "validate": cmd_validate,
    "report": cmd_report,
    "gpu-table": cmd_gpu_table,
    "fit": cmd_fit,
    "pareto": cmd_pareto,
    "energy": cmd_energy,
    "forecast": cmd_forecast,
    "estimate-flops": cmd_estimate_flops,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except BundleValidationError as e:
        for issue in e.issues:
            print(issue, file=sys.stderr)
        return EXIT_INVALID
    except AnalysisError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ANALYSIS


if __name__ == "__main__":
    sys.exit(main())
