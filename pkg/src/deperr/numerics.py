"""Small numeric helpers used by the metric and error formulas."""

from __future__ import annotations

import math

# exp(x) overflows around 709.78; switch to the log-space form well before.
_EXP_SWITCH = 700.0


def expm1_ratio(a: float, b: float) -> float:
    """Compute expm1(a)/expm1(b) for a, b > 0 without overflow.

    For large arguments the direct ratio is inf/inf; rewrite as
    exp(a-b) * (1-exp(-a)) / (1-exp(-b)), which is stable for any
    positive a, b.
    """
    if a == b:
        return 1.0
    if a < _EXP_SWITCH and b < _EXP_SWITCH:
        return math.expm1(a) / math.expm1(b)
    if a - b > _EXP_SWITCH:  # ratio exceeds float range
        return math.inf
    return math.exp(a - b) * math.expm1(-a) / math.expm1(-b)


def clamp_unit(p: float) -> float:
    """Clamp a probability to [0, 1] after floating-point rounding."""
    if p < 0.0:
        return 0.0
    if p > 1.0:
        return 1.0
    return p
