"""Recompute both GPU efficiency tables and diff them against the published values."""

import argparse
import csv
from pathlib import Path

from inference_energy.hardware import build_adapted_table, efficiency, speedup_summaries
from inference_energy.registry import load_default_bundle

PUBLISHED = Path(__file__).resolve().parents[1] / "tests" / "data" / "published_gpu_efficiency.csv"


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--tol", type=float, default=0.01)
    args = ap.parse_args()

    bundle = load_default_bundle()
    for s in speedup_summaries(bundle):
        print(f"speed-up {s.gpu_name:<11} {s.precision:<6} {s.domain:<4} {s.mean_speedup:.4f} (n={s.sample_count})")

    index = {(p.domain, p.gpu_name, p.precision): p for p in build_adapted_table(bundle)}
    with open(PUBLISHED, newline="") as f:
        rows = list(csv.DictReader(f))
    bad = 0
    for r in rows:
        if r["table"] == "theoretical":
            g = bundle.gpu(r["name"], r["precision"])
            got = efficiency(g.tflops_peak, g.tdp_watts)
        else:
            got = index[(r["group"], r["name"], r["precision"])].gflops_per_watt
        diff = got - float(r["gflops_per_watt"])
        if abs(diff) > args.tol + 1e-9:
            bad += 1
            print(f"MISMATCH {r['table']:<11} {r['name']:<28} {r['precision']:<11} "
                  f"computed {got:.4f} printed {r['gflops_per_watt']} ({diff:+.4f})")
    print(f"{len(rows) - bad}/{len(rows)} rows within {args.tol}")


if __name__ == "__main__":
    main()
