"""FLOPs counting conventions and scaling-law estimators for forward passes.

Compound scaling of a convolutional network multiplies its FLOPs by
``d * w**2 * r**2`` where d, w, r are the depth, width and resolution ratios
between the target and the base network. The additive form ``d + w² + r²``
that is sometimes quoted cannot reproduce any of the worked estimates and is
not implemented.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import DegenerateResolutions, NonPositiveInput, ZeroBase

QUADRATIC_TOLERANCE = 0.1


class FlopsConvention(str, Enum):
    MADD_PAIR_AS_ONE = "madd_pair_as_one"  # CV papers: one multiply-add = 1
    OP_AS_ONE = "op_as_one"  # every arithmetic op counted, multiply-add = 2


def _positive(*values):
    for v in values:
        if not (v > 0 and math.isfinite(v)):
            raise NonPositiveInput(f"expected a positive finite value, got {v!r}")


def normalize_flops(reported: float, convention: FlopsConvention | str) -> float:
    """Convert a published GFLOPs figure to the two-ops-per-multiply-add convention."""
    _positive(reported)
    if FlopsConvention(convention) is FlopsConvention.MADD_PAIR_AS_ONE:
        return 2.0 * reported
    return reported


@dataclass(frozen=True)
class ScaleFactors:
    depth_ratio: float
    width_ratio: float
    resolution_ratio: float

    def __post_init__(self):
        for v in (self.depth_ratio, self.width_ratio, self.resolution_ratio):
            if not (v > 0 and math.isfinite(v)):
                raise NonPositiveInput(f"scale factors must be positive and finite: {self}")

    def __mul__(self, other: ScaleFactors) -> ScaleFactors:
        return ScaleFactors(self.depth_ratio * other.depth_ratio,
                            self.width_ratio * other.width_ratio,
                            self.resolution_ratio * other.resolution_ratio)

    @property
    def flops_multiplier(self) -> float:
        return self.depth_ratio * self.width_ratio ** 2 * self.resolution_ratio ** 2


@dataclass(frozen=True)
class ArchSpec:
    width_coeff: float
    depth_coeff: float
    test_resolution: float


def scale_factors(base: ArchSpec, target: ArchSpec) -> ScaleFactors:
    if min(base.width_coeff, base.depth_coeff, base.test_resolution) <= 0:
        raise ZeroBase(f"base architecture must be positive: {base}")
    return ScaleFactors(
        depth_ratio=target.depth_coeff / base.depth_coeff,
        width_ratio=target.width_coeff / base.width_coeff,
        resolution_ratio=target.test_resolution / base.test_resolution,
    )


def compound_scale_flops(base_gflops: float, f: ScaleFactors) -> float:
    _positive(base_gflops)
    return base_gflops * f.flops_multiplier


def resolution_scale_flops(base_gflops: float, base_res: float, target_res: float) -> float:
    """Extrapolate FLOPs assuming quadratic growth in input side length.

    Check ``resolution_exponent`` against two measured resolutions first; the
    assumption holds for convolutional nets and plain vision transformers, not
    in general.
    """
    _positive(base_gflops, base_res, target_res)
    return base_gflops * (target_res / base_res) ** 2


def resolution_exponent(flops_a: float, flops_b: float, res_a: float, res_b: float) -> float:
    """Empirical exponent k in flops ∝ res**k from two (res, flops) measurements."""
    _positive(flops_a, flops_b, res_a, res_b)
    if res_a == res_b:
        raise DegenerateResolutions("resolutions must differ")
    return math.log(flops_b / flops_a) / math.log(res_b / res_a)


def is_quadratic(exponent: float, tol: float = QUADRATIC_TOLERANCE) -> bool:
    return abs(exponent - 2.0) <= tol


# --- recorded estimates for models without published forward-pass FLOPs ----

EFFICIENTNET_B0 = ArchSpec(width_coeff=1.0, depth_coeff=1.0, test_resolution=224)
EFFICIENTNET_B7 = ArchSpec(width_coeff=2.0, depth_coeff=3.1, test_resolution=600)
EFFICIENTNET_L2 = ArchSpec(width_coeff=4.3, depth_coeff=5.3, test_resolution=800)


@dataclass(frozen=True)
class CompoundEstimate:
    base_model: str
    base_gflops: float
    base: ArchSpec
    target: ArchSpec

    def compute(self) -> float:
        return compound_scale_flops(self.base_gflops, scale_factors(self.base, self.target))


@dataclass(frozen=True)
class ResolutionEstimate:
    base_model: str
    base_gflops: float
    base_res: float
    target_res: float

    def compute(self) -> float:
        return resolution_scale_flops(self.base_gflops, self.base_res, self.target_res)


# Inputs behind every bundled record whose flops_provenance is "estimated".
ESTIMATES = {
    "NoisyStudent-L2": CompoundEstimate("EfficientNet-B7", 74.0, EFFICIENTNET_B7, EFFICIENTNET_L2),
    # same network as NoisyStudent-L2, different training
    "Meta Pseudo Labels L2": CompoundEstimate("EfficientNet-B7", 74.0, EFFICIENTNET_B7, EFFICIENTNET_L2),
    # L2 evaluated at 600px
    "FixEfficientNet-L2": CompoundEstimate(
        "EfficientNet-B7", 74.0, EFFICIENTNET_B7, ArchSpec(4.3, 5.3, 600)),
    "FixEfficientNet-B7": ResolutionEstimate("EfficientNet-B7", 74.0, 600, 632),
    "FixEfficientNet-B0": ResolutionEstimate("EfficientNet-B0", 0.78, 224, 320),
    # ViT-G/14 published at 224px (965.3) and 384px (2859.9), evaluated at 518px
    "ViT-G/14": ResolutionEstimate("ViT-G/14@384", 2859.9, 384, 518),
}

VIT_G14_MEASURED = ((224, 965.3), (384, 2859.9))
