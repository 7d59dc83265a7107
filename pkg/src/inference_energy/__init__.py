"""Inference compute and energy trend analysis for published DNNs and GPUs."""

from .registry import DatasetBundle, Domain, ModelRecord, GpuRecord, ThroughputBenchmark, load_bundle, load_default_bundle, filter_models

__version__ = "0.1.0"
