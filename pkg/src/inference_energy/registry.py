"""Record types, CSV loading/validation and filtered views of the datasets.

Three comma-separated files make up a dataset bundle:

* ``models.csv``: name,domain,score,params_m,gflops,input_tokens,extra_data,
  release_date,architecture,flops_provenance
* ``gpus.csv``: name,precision,tflops,tdp_w,launch_date,deployment
* ``benchmarks.csv``: task_domain,model,framework,batch,gpu,precision,
  throughput,reference_gpu

Dates are ``DD/MM/YYYY``. An empty cell means the value is absent; absent
values are held as ``None``, never as zero. GFLOPs are stored already in the
two-operations-per-multiply-add convention.
"""

from __future__ import annotations

import csv
import os
from collections import Counter
from dataclasses import dataclass, fields
from datetime import date, datetime, timedelta
from enum import Enum
from importlib import resources
from pathlib import Path

from .errors import (
    DANGLING_REFERENCE,
    INVARIANT_VIOLATION,
    MISSING_COLUMN,
    UNPARSEABLE_VALUE,
    BundleValidationError,
    ValidationIssue,
)

SCHEMA_VERSION = "1"
DATA_ENV_VAR = "INFERENCE_ENERGY_DATA"
DATE_FORMAT = "%d/%m/%Y"
EPOCH = date(1970, 1, 1)
DAYS_PER_YEAR = 365.25

MODEL_COLUMNS = ("name", "domain", "score", "params_m", "gflops", "input_tokens",
                 "extra_data", "release_date", "architecture", "flops_provenance")
GPU_COLUMNS = ("name", "precision", "tflops", "tdp_w", "launch_date", "deployment")
BENCHMARK_COLUMNS = ("task_domain", "model", "framework", "batch", "gpu", "precision",
                     "throughput", "reference_gpu")

MODEL_DATE_RANGE = (date(2012, 1, 1), date(2022, 1, 1))
GPU_DATE_RANGE = (date(2010, 1, 1), date(2022, 1, 1))


class Domain(str, Enum):
    CV = "CV"
    NLP = "NLP"


class Architecture(str, Enum):
    CNN = "CNN"
    TRANSFORMER = "Transformer"
    HYBRID = "Hybrid"
    RNN = "RNN"


class FlopsProvenance(str, Enum):
    REPORTED = "reported"
    TOOL_MEASURED = "tool_measured"
    ESTIMATED = "estimated"


class GpuPrecision(str, Enum):
    FP32 = "FP32"
    FP16 = "FP16"
    TF32 = "TF32"
    MIXED_TENSOR = "MixedTensor"


class BenchPrecision(str, Enum):
    FP32 = "FP32"
    TF32 = "TF32"
    MIXED = "Mixed"


class Deployment(str, Enum):
    DESKTOP = "Desktop"
    SERVER = "Server"


def fractional_year(d: date) -> float:
    """Calendar date -> continuous year axis (2012-01-01 is about 2012.0)."""
    return 1970.0 + (d - EPOCH).days / DAYS_PER_YEAR


def date_from_year(t: float) -> date:
    return EPOCH + timedelta(days=round((t - 1970.0) * DAYS_PER_YEAR))


@dataclass(frozen=True)
class ModelRecord:
    name: str
    domain: Domain
    gflops_forward: float
    release_date: date
    architecture: Architecture
    score: float | None = None
    params: float | None = None  # millions
    input_tokens: int | None = None
    extra_data: str = "none"
    flops_provenance: FlopsProvenance = FlopsProvenance.REPORTED

    @property
    def year(self) -> int:
        return self.release_date.year

    @property
    def t(self) -> float:
        return fractional_year(self.release_date)

    @property
    def uses_extra_data(self) -> bool:
        return self.extra_data.lower() != "none"


@dataclass(frozen=True)
class GpuRecord:
    name: str
    precision: GpuPrecision
    tflops_peak: float
    tdp_watts: float
    launch_date: date
    deployment: Deployment


@dataclass(frozen=True)
class ThroughputBenchmark:
    task_domain: Domain
    model_name: str
    framework: str
    batch_size: int
    gpu_name: str
    precision: BenchPrecision
    throughput: float
    reference_gpu: str

    @property
    def group(self) -> tuple:
        return (self.model_name, self.framework, self.batch_size)


@dataclass(frozen=True)
class DatasetBundle:
    models: tuple[ModelRecord, ...] = ()
    gpus: tuple[GpuRecord, ...] = ()
    benchmarks: tuple[ThroughputBenchmark, ...] = ()
    schema_version: str = SCHEMA_VERSION

    def gpu(self, name: str, precision: GpuPrecision | str = GpuPrecision.FP32) -> GpuRecord:
        for g in self.gpus:
            if g.name == name and g.precision == precision:
                return g
        raise KeyError((name, str(precision)))

    def model(self, name: str, domain: Domain | str | None = None) -> ModelRecord:
        for m in self.models:
            if m.name == name and (domain is None or m.domain == domain):
                return m
        raise KeyError(name)


# --- parsing ---------------------------------------------------------------

class _RowError(Exception):
    def __init__(self, kind, column, message):
        self.kind, self.column, self.message = kind, column, message


def _cell(row, col):
    value = (row.get(col) or "").strip()
    return value or None


def _num(row, col, cast=float, required=True):
    raw = _cell(row, col)
    if raw is None:
        if required:
            raise _RowError(UNPARSEABLE_VALUE, col, "required value is empty")
        return None
    try:
        return cast(raw)
    except ValueError:
        raise _RowError(UNPARSEABLE_VALUE, col, f"cannot parse {raw!r}") from None


def _text(row, col):
    raw = _cell(row, col)
    if raw is None:
        raise _RowError(UNPARSEABLE_VALUE, col, "required value is empty")
    return raw


def _enum(row, col, enum_cls):
    raw = _text(row, col)
    try:
        return enum_cls(raw)
    except ValueError:
        allowed = ", ".join(e.value for e in enum_cls)
        raise _RowError(UNPARSEABLE_VALUE, col, f"{raw!r} not one of {{{allowed}}}") from None


def _date(row, col):
    raw = _text(row, col)
    try:
        return datetime.strptime(raw, DATE_FORMAT).date()
    except ValueError:
        raise _RowError(UNPARSEABLE_VALUE, col, f"{raw!r} is not DD/MM/YYYY") from None


def _violation(rule):
    return _RowError(INVARIANT_VIOLATION, None, rule)


def _parse_model(row, check_dates):
    domain = _enum(row, "domain", Domain)
    rec = ModelRecord(
        name=_text(row, "name"),
        domain=domain,
        score=_num(row, "score", required=False),
        params=_num(row, "params_m", required=False),
        gflops_forward=_num(row, "gflops"),
        input_tokens=_num(row, "input_tokens", int, required=False),
        extra_data=_cell(row, "extra_data") or "none",
        release_date=_date(row, "release_date"),
        architecture=_enum(row, "architecture", Architecture),
        flops_provenance=_enum(row, "flops_provenance", FlopsProvenance),
    )
    if not rec.gflops_forward > 0:
        raise _violation(f"{rec.name}: gflops must be > 0")
    if rec.params is not None and not rec.params > 0:
        raise _violation(f"{rec.name}: params must be > 0 when present")
    if rec.score is not None and not 0 < rec.score <= 100:
        raise _violation(f"{rec.name}: score must be in (0, 100]")
    if domain is Domain.NLP and (rec.input_tokens is None or rec.input_tokens < 1):
        raise _violation(f"{rec.name}: NLP records need input_tokens >= 1")
    if domain is Domain.CV and rec.input_tokens is not None:
        raise _violation(f"{rec.name}: CV records carry no input_tokens")
    lo, hi = MODEL_DATE_RANGE
    if check_dates and not lo <= rec.release_date <= hi:
        raise _violation(f"{rec.name}: release_date outside [{lo}, {hi}]")
    return rec


def _parse_gpu(row, check_dates):
    rec = GpuRecord(
        name=_text(row, "name"),
        precision=_enum(row, "precision", GpuPrecision),
        tflops_peak=_num(row, "tflops"),
        tdp_watts=_num(row, "tdp_w"),
        launch_date=_date(row, "launch_date"),
        deployment=_enum(row, "deployment", Deployment),
    )
    if not rec.tflops_peak > 0:
        raise _violation(f"{rec.name}: tflops must be > 0")
    if not rec.tdp_watts > 0:
        raise _violation(f"{rec.name}: tdp_w must be > 0")
    lo, hi = GPU_DATE_RANGE
    if check_dates and not lo <= rec.launch_date <= hi:
        raise _violation(f"{rec.name}: launch_date outside [{lo}, {hi}]")
    return rec


def _parse_benchmark(row, check_dates):
    rec = ThroughputBenchmark(
        task_domain=_enum(row, "task_domain", Domain),
        model_name=_text(row, "model"),
        framework=_text(row, "framework"),
        batch_size=_num(row, "batch", int),
        gpu_name=_text(row, "gpu"),
        precision=_enum(row, "precision", BenchPrecision),
        throughput=_num(row, "throughput"),
        reference_gpu=_text(row, "reference_gpu"),
    )
    if not rec.throughput > 0:
        raise _violation(f"{rec.model_name}@{rec.gpu_name}: throughput must be > 0")
    if rec.batch_size < 1:
        raise _violation(f"{rec.model_name}@{rec.gpu_name}: batch must be >= 1")
    return rec


def _read_table(path, columns, parse, issues, check_dates):
    """Parse one CSV file; returns [(line, record)] for rows that parsed cleanly."""
    label = Path(path).name
    with open(path, newline="", encoding="utf-8") as f:
        reader = csv.DictReader(f)
        header = [h.strip() for h in (reader.fieldnames or [])]
        missing = [c for c in columns if c not in header]
        if missing:
            for c in missing:
                issues.append(ValidationIssue(MISSING_COLUMN, label, None, f"column {c!r} missing", c))
            return []
        reader.fieldnames = header
        out = []
        for row in reader:
            line = reader.line_num
            if not any((v or "").strip() for v in row.values() if isinstance(v, str)):
                continue
            try:
                out.append((line, parse(row, check_dates)))
            except _RowError as e:
                issues.append(ValidationIssue(e.kind, label, line, e.message, e.column))
        return out


def load_bundle(models_path, gpus_path, benchmarks_path, *, check_date_ranges: bool = True) -> DatasetBundle:
    """Load and validate the three dataset files.

    Raises BundleValidationError carrying every issue found; a bundle is only
    returned when all rows parse and every cross-record rule holds.
    """
    issues: list[ValidationIssue] = []
    models = _read_table(models_path, MODEL_COLUMNS, _parse_model, issues, check_date_ranges)
    gpus = _read_table(gpus_path, GPU_COLUMNS, _parse_gpu, issues, check_date_ranges)
    benches = _read_table(benchmarks_path, BENCHMARK_COLUMNS, _parse_benchmark, issues, check_date_ranges)

    mlabel, glabel, blabel = Path(models_path).name, Path(gpus_path).name, Path(benchmarks_path).name
    seen = Counter()
    for line, m in models:
        seen[(m.domain, m.name)] += 1
        if seen[(m.domain, m.name)] == 2:
            issues.append(ValidationIssue(INVARIANT_VIOLATION, mlabel, line,
                                          f"duplicate model name {m.name!r} in domain {m.domain.value}"))
    seen = Counter()
    for line, g in gpus:
        seen[(g.name, g.precision)] += 1
        if seen[(g.name, g.precision)] == 2:
            issues.append(ValidationIssue(INVARIANT_VIOLATION, glabel, line,
                                          f"duplicate GPU ({g.name}, {g.precision.value})"))

    gpu_names = {g.name for _, g in gpus}
    baselines = Counter((b.group, b.gpu_name) for _, b in benches if b.precision is BenchPrecision.FP32)
    for line, b in benches:
        for ref in (b.gpu_name, b.reference_gpu):
            if ref not in gpu_names:
                issues.append(ValidationIssue(DANGLING_REFERENCE, blabel, line,
                                              f"GPU {ref!r} not found in {glabel}"))
        n = baselines[(b.group, b.reference_gpu)]
        if n != 1:
            issues.append(ValidationIssue(
                INVARIANT_VIOLATION, blabel, line,
                f"{b.model_name}/{b.framework}/batch {b.batch_size}: expected exactly one FP32 "
                f"baseline on {b.reference_gpu}, found {n}"))

    if issues:
        raise BundleValidationError(issues)
    return DatasetBundle(
        models=tuple(m for _, m in models),
        gpus=tuple(g for _, g in gpus),
        benchmarks=tuple(b for _, b in benches),
    )


def default_data_dir() -> Path:
    override = os.environ.get(DATA_ENV_VAR)
    if override:
        return Path(override)
    return Path(str(resources.files("inference_energy") / "data"))


def default_paths(data_dir=None) -> tuple[Path, Path, Path]:
    d = Path(data_dir) if data_dir else default_data_dir()
    return d / "models.csv", d / "gpus.csv", d / "benchmarks.csv"


def load_default_bundle(data_dir=None) -> DatasetBundle:
    return load_bundle(*default_paths(data_dir))


# --- serialization ---------------------------------------------------------

def _fmt(value):
    if value is None:
        return ""
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, date):
        return value.strftime(DATE_FORMAT)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def dump_bundle(bundle: DatasetBundle, directory) -> tuple[Path, Path, Path]:
    """Write ``bundle`` as the three CSV files under ``directory``."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = default_paths(directory)
    model_rows = [
        (m.name, m.domain, m.score, m.params, m.gflops_forward, m.input_tokens, m.extra_data,
         m.release_date, m.architecture, m.flops_provenance)
        for m in bundle.models
    ]
    gpu_rows = [
        (g.name, g.precision, g.tflops_peak, g.tdp_watts, g.launch_date, g.deployment)
        for g in bundle.gpus
    ]
    bench_rows = [
        (b.task_domain, b.model_name, b.framework, b.batch_size, b.gpu_name, b.precision,
         b.throughput, b.reference_gpu)
        for b in bundle.benchmarks
    ]
    for path, cols, rows in zip(paths, (MODEL_COLUMNS, GPU_COLUMNS, BENCHMARK_COLUMNS),
                                (model_rows, gpu_rows, bench_rows)):
        with open(path, "w", newline="", encoding="utf-8") as f:
            w = csv.writer(f, lineterminator="\n")
            w.writerow(cols)
            w.writerows([_fmt(v) for v in row] for row in rows)
    return paths


# --- views -----------------------------------------------------------------

def _sort_key(m: ModelRecord):
    return (m.release_date, m.name)


def filter_models(bundle: DatasetBundle, domain: Domain | str | None = None, year_range=None,
                  require_score: bool = False, extra_data: bool | None = None) -> list[ModelRecord]:
    """Select models by domain, inclusive calendar-year range, score presence
    and extra-data usage (None = either). Sorted by release date, then name."""
    dom = Domain(domain) if domain is not None else None
    out = []
    for m in bundle.models:
        if dom is not None and m.domain is not dom:
            continue
        if year_range is not None and not year_range[0] <= m.year <= year_range[1]:
            continue
        if require_score and m.score is None:
            continue
        if extra_data is not None and m.uses_extra_data != extra_data:
            continue
        out.append(m)
    return sorted(out, key=_sort_key)


def record_dict(rec) -> dict:
    return {f.name: getattr(rec, f.name) for f in fields(rec)}
