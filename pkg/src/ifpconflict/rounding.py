"""Decimal display rounding (half away from zero) robust to binary float noise."""

from __future__ import annotations

from decimal import ROUND_HALF_UP, Decimal


def round_half_away(x: float, decimals: int = 2) -> float:
    """Round ``x`` half away from zero.

    The value is first snapped to 12 significant decimals so that e.g. the
    float nearest to 0.585 (0.58499999...) rounds to 0.59 like its decimal
    counterpart.
    """
    snapped = Decimal(f"{float(x):.12g}")
    return float(snapped.quantize(Decimal(1).scaleb(-decimals), rounding=ROUND_HALF_UP))


def fmt(x: float, decimals: int = 2) -> str:
    return f"{round_half_away(x, decimals):.{decimals}f}"
