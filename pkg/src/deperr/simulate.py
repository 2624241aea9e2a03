"""Independent ground truth: shock-model samplers and finite differences.

The Marshall-Olkin construction draws one exponential shock clock per rated
subset; a component fails at the earliest shock hitting any subset that
contains it.  Weibull-type families are obtained by power (and scale) maps
of the exponential draws.  The positive-stable and product-interaction
families have no elementary construction and are validated through the
finite-difference oracle instead.

Randomness is counter-based (Philox) with one disjoint counter block per
rated subset, so estimates depend only on (seed, draw_count) and not on how
the work is scheduled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import CapabilityError, DomainError, SingularityError
from .models import (
    Family,
    MetricKind,
    SubsetRates,
    ValidatedModel,
    mask_members,
    series_metric,
)

SAMPLABLE_FAMILIES = frozenset(
    {Family.INDEP_EXP, Family.MOME, Family.INDEP_WEIBULL, Family.MOMW, Family.LEE_ML}
)


@dataclass(frozen=True)
class RngPolicy:
    """Seed plus the counter-based stream discipline (fixed per subset)."""

    seed: int = 0


@dataclass(frozen=True)
class SimEstimate:
    value: float
    stderr: float
    n_samples: int
    seed: int


def _subset_stream(seed: int, subset_index: int) -> np.random.Generator:
    # One Philox counter block per subset keeps the streams disjoint and
    # independent of evaluation order.
    bg = np.random.Philox(key=seed & (2**64 - 1), counter=[0, 0, subset_index + 1, 0])
    return np.random.Generator(bg)


def sample_mome(
    rates: SubsetRates, draw_count: int, policy: RngPolicy = RngPolicy()
) -> np.ndarray:
    """Draw (draw_count, n) lifetimes from the subset-shock construction."""
    if draw_count < 1:
        raise DomainError(f"draw_count must be >= 1, got {draw_count}")
    x = np.full((draw_count, rates.n), np.inf)
    for j, (mask, lam) in enumerate(rates.items):
        shocks = _subset_stream(policy.seed, j).standard_exponential(draw_count)
        shocks /= lam
        for i in mask_members(mask):
            np.minimum(x[:, i], shocks, out=x[:, i])
    return x


def sample_momw(
    rates: SubsetRates,
    shapes,
    draw_count: int,
    policy: RngPolicy = RngPolicy(),
) -> np.ndarray:
    """Componentwise power map X_i = Y_i**(1/alpha_i) of the shock draws."""
    al = np.asarray(shapes, dtype=float)
    if al.shape != (rates.n,) or np.any(al <= 0):
        raise DomainError("shapes must be a positive vector of length n")
    return sample_mome(rates, draw_count, policy) ** (1.0 / al)


def sample_lee(
    rates: SubsetRates,
    alpha: float,
    scales,
    draw_count: int,
    policy: RngPolicy = RngPolicy(),
) -> np.ndarray:
    """Common-shape map X_i = Y_i**(1/alpha) / c_i of the shock draws."""
    if not alpha > 0:
        raise DomainError(f"alpha must be > 0, got {alpha}")
    c = np.asarray(scales, dtype=float)
    if c.shape != (rates.n,) or np.any(c <= 0):
        raise DomainError("scales must be a positive vector of length n")
    return sample_mome(rates, draw_count, policy) ** (1.0 / alpha) / c


def sample_model(
    model: ValidatedModel, draw_count: int, policy: RngPolicy = RngPolicy()
) -> np.ndarray:
    """Lifetimes for any samplable family; CapabilityError otherwise."""
    fam = model.family
    if fam in (Family.INDEP_EXP, Family.MOME):
        return sample_mome(model.rates, draw_count, policy)
    if fam in (Family.INDEP_WEIBULL, Family.MOMW):
        return sample_momw(model.rates, model.shapes, draw_count, policy)
    if fam is Family.LEE_ML:
        return sample_lee(model.rates, model.alpha, model.scales, draw_count, policy)
    raise CapabilityError(
        f"family {fam.value} has no shock-model sampler; "
        "use finite_diff_metric for validation"
    )


def estimate_system_sf(
    model: ValidatedModel,
    structure: str,
    t: float,
    draw_count: int,
    policy: RngPolicy = RngPolicy(),
) -> SimEstimate:
    """Monte Carlo estimate of the series or parallel survival at t."""
    if structure not in ("series", "parallel"):
        raise DomainError(f"structure must be 'series' or 'parallel', got {structure!r}")
    if not t > 0:
        raise DomainError(f"t must be > 0, got {t}")
    samples = sample_model(model, draw_count, policy)
    life = samples.min(axis=1) if structure == "series" else samples.max(axis=1)
    value = float(np.mean(life > t))
    stderr = math.sqrt(value * (1.0 - value) / draw_count)
    return SimEstimate(
        value=value, stderr=stderr, n_samples=draw_count, seed=policy.seed
    )


# ---------------------------------------------------------------------------
# Finite-difference metric oracle
# ---------------------------------------------------------------------------


def _log_sf(model: ValidatedModel, t: float) -> float:
    sf = series_metric(model, MetricKind.SF, t)
    if sf <= 0.0 or sf >= 1.0:
        raise SingularityError(
            f"series survival saturates at t={t}; shrink the stencil or move t"
        )
    return -math.log(sf)


def _richardson(d_coarse: float, d_fine: float) -> float:
    # One level of extrapolation for a central difference: error O(h^2).
    return (4.0 * d_fine - d_coarse) / 3.0


def finite_diff_metric(
    model: ValidatedModel,
    metric: MetricKind,
    t: float,
    step: float = 1e-4,
) -> float:
    """FR/RHR/AI from central differences of the series survival.

    Independent of the per-family closed forms: only SF evaluations are
    used.  `step` is relative; the absolute stencil is
    h = max(step * t, 1e-8), halved once for Richardson extrapolation.
    """
    metric = MetricKind(metric)
    if metric is MetricKind.SF:
        raise DomainError("finite differences target FR, RHR, or AI, not SF")
    if not t > 0:
        raise DomainError(f"t must be > 0, got {t}")
    if not 0 < step <= 1e-2:
        raise DomainError(f"step must be in (0, 1e-2], got {step}")
    h = max(step * t, 1e-8)
    h = min(h, 0.5 * t)

    def central(f, hh: float) -> float:
        return (f(t + hh) - f(t - hh)) / (2.0 * hh)

    cum_hazard = lambda u: _log_sf(model, u)
    fr = _richardson(central(cum_hazard, h), central(cum_hazard, h / 2))
    if metric is MetricKind.FR:
        return fr
    if metric is MetricKind.AI:
        return t * fr / _log_sf(model, t)
    # RHR = f(t) / F(t) with the density from differencing the CDF.
    sf_at = lambda u: series_metric(model, MetricKind.SF, u)
    density = _richardson(
        -central(sf_at, h), -central(sf_at, h / 2)
    )
    cdf = 1.0 - sf_at(t)
    if cdf <= 0.0:
        raise SingularityError(f"series CDF is 0 at t={t}; RHR undefined")
    return density / cdf
