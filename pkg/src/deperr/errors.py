"""Relative errors from wrongly assuming independent components.

For a metric m evaluated on the series system, the relative error at time t
is (m_dep(t) - m_indep(t)) / m_indep(t), where the independent reference is
the model's independent counterpart.  The generic combinator works for every
family; per-family closed forms exist for the Marshall-Olkin exponential,
the product-interaction exponential, the Marshall-Olkin Weibull (SF and FR
only), the positive-stable Weibull, and the common-shape Marshall-Olkin
Weibull family.

All formulas are expressed through the series cumulative hazards
H_dep, H_indep and their derivatives, which keeps them finite where the raw
survival values would under- or overflow:

    SF:  exp(H_i - H_d) - 1
    FR:  H_d'/H_i' - 1
    RHR: (H_d'/H_i') * expm1(H_i)/expm1(H_d) - 1
    AI:  (H_d' * H_i)/(H_i' * H_d) - 1
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import DomainError, ZeroDenominatorError
from .grids import GridLike, grid_points
from .models import (
    Family,
    MetricKind,
    ValidatedModel,
    independent_counterpart,
    series_hazard,
    series_metric,
)
from .numerics import expm1_ratio

#: relative tolerance for grid-based monotonicity/constancy verdicts
MONOTONE_TOL = 1e-9


def _error_from_hazards(
    metric: MetricKind,
    h_dep: float,
    dh_dep: float,
    h_ind: float,
    dh_ind: float,
) -> float:
    if metric is MetricKind.SF:
        return math.expm1(h_ind - h_dep)
    if metric is MetricKind.FR:
        return dh_dep / dh_ind - 1.0
    if metric is MetricKind.RHR:
        return (dh_dep / dh_ind) * expm1_ratio(h_ind, h_dep) - 1.0
    if metric is MetricKind.AI:
        return (dh_dep * h_ind) / (dh_ind * h_dep) - 1.0
    raise AssertionError(f"unhandled metric {metric}")


def relative_error(model: ValidatedModel, metric: MetricKind, t: float) -> float:
    """Generic relative error of the named series metric at time t."""
    metric = MetricKind(metric)
    indep = independent_counterpart(model)
    # Evaluating the reference metric both enforces the domain checks and
    # surfaces an exact zero denominator before the stable combinator runs.
    ref = series_metric(indep, metric, t)
    if ref == 0.0:
        raise ZeroDenominatorError(
            f"independent-counterpart {metric.value} is 0 at t={t}"
        )
    h_dep, dh_dep = series_hazard(model, t)
    h_ind, dh_ind = series_hazard(indep, t)
    return _error_from_hazards(metric, h_dep, dh_dep, h_ind, dh_ind)


def closed_form_error(
    model: ValidatedModel, metric: MetricKind, t: float
) -> float | None:
    """Per-family closed-form relative error, or None when no form exists.

    Each form is derived from the survival functions themselves as an
    algebraic rewrite of the generic combinator, which the test suite
    asserts.
    """
    metric = MetricKind(metric)
    if not t > 0:
        raise DomainError(f"t must be > 0, got {t}")
    fam = model.family

    if fam in (Family.INDEP_EXP, Family.INDEP_WEIBULL):
        return 0.0

    if fam is Family.MOME:
        lam = model.rates.total
        s = float(model.rates.singleton_vector.sum())
        if s == 0.0:
            raise ZeroDenominatorError("model has no singleton rates")
        if metric is MetricKind.SF:
            return math.expm1(-t * (lam - s))
        if metric is MetricKind.FR:
            return (lam - s) / s
        if metric is MetricKind.RHR:
            return (lam / s) * expm1_ratio(s * t, lam * t) - 1.0
        return 0.0  # AI is identically 1 on both sides

    if fam is Family.MG1:
        a = model.rates.size_totals
        powers = np.arange(1, model.n + 1, dtype=float)
        tp = t**powers
        theta = float(np.dot(a, tp))
        dtheta = float(np.dot(a * powers, tp / t))
        a1 = a[0]
        if a1 == 0.0:
            raise ZeroDenominatorError("model has no singleton rates")
        if metric is MetricKind.SF:
            return math.expm1(a1 * t - theta)
        if metric is MetricKind.FR:
            return (dtheta - a1) / a1
        if metric is MetricKind.RHR:
            return (dtheta / a1) * expm1_ratio(a1 * t, theta) - 1.0
        return t * dtheta / theta - 1.0  # AI; independent side is 1

    if fam is Family.MOMW:
        if metric in (MetricKind.RHR, MetricKind.AI):
            return None
        r, e = model._power_terms
        tp = t**e
        a_val = float(np.dot(r, tp))
        da_val = float(np.dot(r * e, tp / t))
        lam = model.rates.singleton_vector
        al = np.asarray(model.shapes, dtype=float)
        ta = t**al
        s = float(np.dot(lam, ta))
        ds = float(np.dot(lam * al, ta / t))
        if metric is MetricKind.SF:
            return math.expm1(s - a_val)
        if ds == 0.0:
            raise ZeroDenominatorError("model has no singleton rates")
        return (da_val - ds) / ds

    if fam in (Family.CROWDER, Family.LEE_II):
        lam = model.rates.singleton_vector
        al = np.asarray(model.shapes, dtype=float)
        ta = t**al
        s = float(np.dot(lam, ta))
        g, ell = model.gamma, model.stable_exponent
        b = g + s
        h = b**ell - g**ell
        if metric is MetricKind.SF:
            return math.expm1(s - h)
        if metric is MetricKind.FR:
            return ell * b ** (ell - 1.0) - 1.0
        if metric is MetricKind.RHR:
            return ell * b ** (ell - 1.0) * expm1_ratio(s, h) - 1.0
        return ell * b ** (ell - 1.0) * s / h - 1.0  # AI

    if fam is Family.LEE_ML:
        lam_l = model._lee_total
        s = model._lee_indep_total
        if s == 0.0:
            raise ZeroDenominatorError("model has no singleton rates")
        ta = t**model.alpha
        if metric is MetricKind.SF:
            return math.expm1(-ta * (lam_l - s))
        if metric is MetricKind.FR:
            return lam_l / s - 1.0
        if metric is MetricKind.RHR:
            return (lam_l / s) * expm1_ratio(s * ta, lam_l * ta) - 1.0
        return 0.0  # AI is the common shape on both sides

    return None  # LuBI: no closed form; use the generic combinator


def lemma_g(beta: float, gamma: float, x: float) -> float:
    """(gamma/beta) * (e^{beta x} - 1)/(e^{gamma x} - 1) - 1.

    Increasing in x for beta > gamma, decreasing for beta < gamma, and
    identically 0 for beta == gamma; the limit at x -> 0+ is 0.
    """
    if not (beta > 0 and gamma > 0 and x > 0):
        raise DomainError("lemma_g requires beta, gamma, x > 0")
    if beta == gamma:
        return 0.0
    return (gamma / beta) * expm1_ratio(beta * x, gamma * x) - 1.0


def lemma_h(beta: float, gamma: float, alpha: float, x: float) -> float:
    """Power-time variant of :func:`lemma_g`: same expression at x**alpha."""
    if not (beta > 0 and gamma > 0 and alpha > 0 and x > 0):
        raise DomainError("lemma_h requires beta, gamma, alpha, x > 0")
    return lemma_g(beta, gamma, x**alpha)


# ---------------------------------------------------------------------------
# Curves and aging classification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ErrorPoint:
    t: float
    dep: float
    indep: float
    rel_err: float | None  # None flags an undefined (zero-reference) point


@dataclass(frozen=True)
class ErrorCurve:
    metric: MetricKind
    points: tuple[ErrorPoint, ...]


def error_curve(
    model: ValidatedModel, metric: MetricKind, grid: GridLike
) -> ErrorCurve:
    """Pointwise relative error with the raw dependent/independent values."""
    metric = MetricKind(metric)
    pts = grid_points(grid, minimum=1)
    indep = independent_counterpart(model)
    out = []
    for t in pts:
        t = float(t)
        dep_val = series_metric(model, metric, t)
        ind_val = series_metric(indep, metric, t)
        if ind_val == 0.0:
            out.append(ErrorPoint(t=t, dep=dep_val, indep=ind_val, rel_err=None))
            continue
        h_dep, dh_dep = series_hazard(model, t)
        h_ind, dh_ind = series_hazard(indep, t)
        rel = _error_from_hazards(metric, h_dep, dh_dep, h_ind, dh_ind)
        out.append(ErrorPoint(t=t, dep=dep_val, indep=ind_val, rel_err=rel))
    return ErrorCurve(metric=metric, points=tuple(out))


@dataclass(frozen=True)
class AgingClass:
    """Grid-based aging verdicts for the series system."""

    frclass: str  # "IFR" | "DFR" | "neither"
    fraclass: str  # "IFRA" | "DFRA" | "neither"
    aiclass: str  # "IAI" | "DAI" | "neither"
    fr_constant: bool
    ai_constant: bool
    evidence_grid: tuple[float, ...]


def _monotone_verdict(
    values: np.ndarray, up: str, down: str, tol: float
) -> tuple[str, bool]:
    diffs = np.diff(values)
    scale = tol * (1.0 + np.abs(values[:-1]))
    nondecreasing = bool(np.all(diffs >= -scale))
    nonincreasing = bool(np.all(diffs <= scale))
    if nondecreasing and nonincreasing:
        return "neither", True
    if nondecreasing:
        return up, False
    if nonincreasing:
        return down, False
    return "neither", False


def classify_aging(
    model: ValidatedModel, grid: GridLike, tol: float = MONOTONE_TOL
) -> AgingClass:
    """Classify IFR/DFR, IFRA/DFRA, and IAI/DAI behavior on a grid.

    IFRA/DFRA follow from the aging intensity threshold at 1 (a system is
    IFRA exactly when AI >= 1 everywhere, DFRA when AI <= 1); when AI is
    identically 1 both conditions hold and IFRA is reported.  FR and AI
    monotonicity are judged to within `tol`, with constants flagged.
    """
    pts = grid_points(grid, minimum=3)
    fr = np.array([series_metric(model, MetricKind.FR, float(t)) for t in pts])
    ai = np.array([series_metric(model, MetricKind.AI, float(t)) for t in pts])

    frclass, fr_constant = _monotone_verdict(fr, "IFR", "DFR", tol)
    aiclass, ai_constant = _monotone_verdict(ai, "IAI", "DAI", tol)

    if np.all(ai >= 1.0 - tol):
        fraclass = "IFRA"
    elif np.all(ai <= 1.0 + tol):
        fraclass = "DFRA"
    else:
        fraclass = "neither"

    return AgingClass(
        frclass=frclass,
        fraclass=fraclass,
        aiclass=aiclass,
        fr_constant=fr_constant,
        ai_constant=ai_constant,
        evidence_grid=tuple(float(t) for t in pts),
    )
