"""Number formatting for display and for reproducible output files."""

from decimal import ROUND_HALF_UP, Decimal


def round_half_up(value: float, ndigits: int = 2) -> float:
    q = Decimal(1).scaleb(-ndigits)
    return float(Decimal(repr(value)).quantize(q, rounding=ROUND_HALF_UP))


def sig6(value: float) -> float:
    """Round to 6 significant digits so serialized output is byte-stable."""
    return float(f"{value:.6g}")


def display_gflops(value: float) -> str:
    # integers at or above 10 GFLOPs, one decimal below
    one_dp = round_half_up(value, 1)
    if one_dp >= 10:
        return str(int(round_half_up(value, 0)))
    return f"{one_dp:.1f}"
