"""GPU efficiency (GFLOPS/W) and mixed-precision adapted throughput.

Tensor-core peak TFLOPS overstate what DNN inference gets in practice.
The adapted figures instead scale the FP32 peak by the mean
measured speed-up of TF32/mixed-precision inference over an FP32 baseline,
separately for vision and language workloads.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from datetime import date
from pathlib import Path
from statistics import fmean

from .errors import EmptyGroup, GroupMismatch, NonFp32Baseline, NonPositiveInput
from .formatting import round_half_up
from .registry import (
    DATE_FORMAT,
    BenchPrecision,
    DatasetBundle,
    Domain,
    GpuPrecision,
    ThroughputBenchmark,
)

GENERIC = "Generic"


@dataclass(frozen=True)
class EfficiencyPoint:
    gpu_name: str
    domain: str  # "CV", "NLP" or "Generic"
    gflops_per_watt: float
    launch_date: date
    precision: str
    adapted: bool = False
    tflops: float | None = None
    tdp_watts: float | None = None
    deployment: str | None = None

    def __post_init__(self):
        if not self.gflops_per_watt > 0:
            raise NonPositiveInput(f"{self.gpu_name}: efficiency must be positive")
        if self.adapted and self.domain not in (Domain.CV.value, Domain.NLP.value):
            raise ValueError("adapted points must belong to CV or NLP")


@dataclass(frozen=True)
class SpeedupSummary:
    gpu_name: str
    precision: str
    domain: str
    mean_speedup: float
    sample_count: int
    baseline: str  # "own_fp32" or "v100_fp32"
    reference_gpu: str = ""


@dataclass(frozen=True)
class AdaptationConfig:
    # The published adapted table leaves these FP32 entries out of the trend
    # set (A100's FP32 path is replaced by TF32 on Ampere).
    generic_exclude: frozenset = field(default_factory=lambda: frozenset({"Tesla P100", "A100", "A30"}))
    domains: tuple = (Domain.CV, Domain.NLP)


def efficiency(tflops: float, tdp: float) -> float:
    """Peak GFLOPS per Watt, i.e. GFLOPs per Joule at full load."""
    if not (tflops > 0 and tdp > 0):
        raise NonPositiveInput(f"tflops and tdp must be positive, got {tflops}, {tdp}")
    return tflops * 1000.0 / tdp


def benchmark_speedup(bench: ThroughputBenchmark, baseline: ThroughputBenchmark) -> float:
    if baseline.precision is not BenchPrecision.FP32:
        raise NonFp32Baseline(f"baseline {baseline.gpu_name} runs {baseline.precision.value}")
    if bench.group != baseline.group:
        raise GroupMismatch(f"{bench.group} vs {baseline.group}")
    return bench.throughput / baseline.throughput


def find_baseline(benchmarks, bench: ThroughputBenchmark) -> ThroughputBenchmark:
    for b in benchmarks:
        if (b.group == bench.group and b.gpu_name == bench.reference_gpu
                and b.precision is BenchPrecision.FP32):
            return b
    raise EmptyGroup(f"no FP32 baseline on {bench.reference_gpu} for {bench.group}")


def aggregate_speedups(benchmarks, gpu: str, precision: BenchPrecision | str,
                       domain: Domain | str) -> SpeedupSummary:
    """Arithmetic mean of per-row speed-ups for one (gpu, precision, domain).

    Each row is compared with the FP32 run named by its ``reference_gpu``
    (V100 for A100 rows, which have no FP32 measurement).
    """
    precision, domain = BenchPrecision(precision), Domain(domain)
    benchmarks = list(benchmarks)
    rows = [b for b in benchmarks
            if b.gpu_name == gpu and b.precision is precision and b.task_domain is domain]
    if not rows:
        raise EmptyGroup(f"no {precision.value} {domain.value} benchmarks on {gpu}")
    refs = {b.reference_gpu for b in rows}
    if len(refs) != 1:
        raise GroupMismatch(f"mixed reference GPUs for {gpu}: {sorted(refs)}")
    ref = refs.pop()
    ratios = [benchmark_speedup(b, find_baseline(benchmarks, b)) for b in rows]
    return SpeedupSummary(
        gpu_name=gpu,
        precision=precision.value,
        domain=domain.value,
        mean_speedup=fmean(sorted(ratios)),
        sample_count=len(ratios),
        baseline="own_fp32" if ref == gpu else "v100_fp32",
        reference_gpu=ref,
    )


def adapted_tflops(fp32_reference_tflops: float, summary: SpeedupSummary | float) -> float:
    speedup = summary.mean_speedup if isinstance(summary, SpeedupSummary) else summary
    if not (fp32_reference_tflops > 0 and speedup > 0):
        raise NonPositiveInput("reference TFLOPS and speed-up must be positive")
    return fp32_reference_tflops * speedup


def speedup_summaries(bundle: DatasetBundle) -> list[SpeedupSummary]:
    groups = sorted({(b.gpu_name, b.precision.value, b.task_domain.value)
                     for b in bundle.benchmarks if b.precision is not BenchPrecision.FP32})
    return [aggregate_speedups(bundle.benchmarks, *g) for g in groups]


def build_adapted_table(bundle: DatasetBundle, config: AdaptationConfig = AdaptationConfig()
                        ) -> list[EfficiencyPoint]:
    """Generic FP32 efficiency points plus per-domain adapted points.

    Adapted TFLOPS use the FP32 peak of the speed-up reference GPU; the power
    denominator is always the adapted GPU's own TDP.
    """
    generic = [
        EfficiencyPoint(g.name, GENERIC, efficiency(g.tflops_peak, g.tdp_watts), g.launch_date,
                        g.precision.value, False, g.tflops_peak, g.tdp_watts, g.deployment.value)
        for g in bundle.gpus
        if g.precision is GpuPrecision.FP32 and g.name not in config.generic_exclude
    ]
    generic.sort(key=lambda p: (p.launch_date, p.gpu_name))
    wanted = {Domain(d).value for d in config.domains}
    adapted = []
    for s in speedup_summaries(bundle):
        if s.domain not in wanted:
            continue
        own = bundle.gpu(s.gpu_name, GpuPrecision.FP32)
        ref = bundle.gpu(s.reference_gpu, GpuPrecision.FP32)
        tf = adapted_tflops(ref.tflops_peak, s)
        adapted.append(EfficiencyPoint(s.gpu_name, s.domain, efficiency(tf, own.tdp_watts),
                                       own.launch_date, s.precision, True, tf, own.tdp_watts,
                                       own.deployment.value))
    adapted.sort(key=lambda p: (p.domain, p.launch_date, p.gpu_name, p.precision))
    return generic + adapted


def domain_points(points, domain: Domain | str) -> list[EfficiencyPoint]:
    """Points feeding one domain's efficiency trend: generic plus that domain's adapted."""
    d = Domain(domain).value
    return [p for p in points if p.domain in (GENERIC, d)]


ADAPTED_COLUMNS = ("adapted", "gpu", "precision", "tflops", "watts", "launch_date", "type",
                   "gflops_per_watt")
_ADAPTED_LABEL = {GENERIC: "No", "CV": "For CNN", "NLP": "For NLP"}


def adapted_table_rows(points) -> list[tuple]:
    rows = []
    for p in points:
        rows.append((
            _ADAPTED_LABEL[p.domain], p.gpu_name, p.precision,
            f"{round_half_up(p.tflops, 2):.2f}" if p.tflops is not None else "",
            f"{p.tdp_watts:g}" if p.tdp_watts is not None else "",
            p.launch_date.strftime(DATE_FORMAT), p.deployment or "",
            f"{round_half_up(p.gflops_per_watt, 2):.2f}",
        ))
    return rows


def write_adapted_table(points, path) -> Path:
    path = Path(path)
    with open(path, "w", newline="", encoding="utf-8") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(ADAPTED_COLUMNS)
        w.writerows(adapted_table_rows(points))
    return path
