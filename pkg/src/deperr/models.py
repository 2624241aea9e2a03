"""Lifetime model families, validation, and series-system metrics.

Nine families of joint lifetime distributions for an n-component system are
supported.  Each is defined through its joint survival function
F_bar(x_1,...,x_n) = exp(-H(x_1,...,x_n)); on the series diagonal
x_1 = ... = x_n = t this gives a cumulative hazard H(t) with derivative
H'(t), from which all four series metrics follow:

    SF(t)  = exp(-H(t))
    FR(t)  = H'(t)
    RHR(t) = H'(t) / (exp(H(t)) - 1)
    AI(t)  = t * H'(t) / H(t)

Dependence enters through rates attached to subsets of components: a subset
S with rate lambda_S contributes a common-shock style term coupling all
members of S.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum
from functools import cached_property, lru_cache
from typing import Iterable, Mapping, Sequence

import numpy as np

from .exceptions import DomainError, SingularityError, ValidationError
from .numerics import clamp_unit

MAX_COMPONENTS = 24


class Family(str, Enum):
    INDEP_EXP = "IndepExp"
    MOME = "MOME"
    MG1 = "MG1"
    INDEP_WEIBULL = "IndepWeibull"
    MOMW = "MOMW"
    CROWDER = "Crowder"
    LEE_II = "LeeII"
    LEE_ML = "LeeML"
    LU_BI = "LuBI"


class MetricKind(str, Enum):
    SF = "sf"
    FR = "fr"
    RHR = "rhr"
    AI = "ai"


# Families whose rate map may carry subsets of size >= 2.
INTERACTING_FAMILIES = frozenset(
    {Family.MOME, Family.MG1, Family.MOMW, Family.LEE_ML}
)
# Families parameterized by a per-component Weibull shape vector.
SHAPED_FAMILIES = frozenset(
    {Family.INDEP_WEIBULL, Family.MOMW, Family.CROWDER, Family.LEE_II, Family.LU_BI}
)


def mask_members(mask: int) -> tuple[int, ...]:
    """0-based component indices contained in a bitmask subset."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def subset_to_mask(subset: Iterable[int], n: int) -> int:
    """Canonicalize a 1-based index collection into a bitmask over {1..n}."""
    mask = 0
    for idx in subset:
        if not isinstance(idx, (int, np.integer)) or isinstance(idx, bool):
            raise ValidationError(f"subset index {idx!r} is not an integer")
        if idx < 1 or idx > n:
            raise ValidationError(f"subset index {idx} outside 1..{n}")
        mask |= 1 << (idx - 1)
    return mask


def mask_to_subset(mask: int) -> tuple[int, ...]:
    """1-based sorted index tuple for a bitmask subset."""
    return tuple(i + 1 for i in mask_members(mask))


@dataclass(frozen=True)
class SubsetRates:
    """Nonnegative rates attached to nonempty subsets of {1..n}.

    Keys are canonical bitmasks; absent subsets have rate zero.  Zero-rate
    entries are dropped during canonicalization so equality is structural.
    """

    n: int
    items: tuple[tuple[int, float], ...]

    @classmethod
    def from_mapping(cls, n: int, rates: Mapping) -> "SubsetRates":
        canonical: dict[int, float] = {}
        for key, value in rates.items():
            if isinstance(key, (int, np.integer)):
                mask = int(key)
                if mask <= 0 or mask >= (1 << n):
                    raise ValidationError(
                        f"rates[{key}]: bitmask outside nonempty subsets of 1..{n}"
                    )
            else:
                mask = subset_to_mask(key, n)
                if mask == 0:
                    raise ValidationError(f"rates[{key!r}]: empty subset")
            rate = float(value)
            if math.isnan(rate) or rate < 0:
                raise ValidationError(
                    f"rates[{mask_to_subset(mask)}]: negative rate {value}"
                )
            if mask in canonical:
                raise ValidationError(
                    f"rates[{mask_to_subset(mask)}]: duplicate subset"
                )
            if rate > 0:
                canonical[mask] = rate
        return cls(n=n, items=tuple(sorted(canonical.items())))

    def as_dict(self) -> dict[int, float]:
        return dict(self.items)

    @cached_property
    def total(self) -> float:
        return float(math.fsum(rate for _, rate in self.items))

    @cached_property
    def singleton_vector(self) -> np.ndarray:
        """Per-component singleton rates lambda_i (zero when absent)."""
        vec = np.zeros(self.n)
        for mask, rate in self.items:
            members = mask_members(mask)
            if len(members) == 1:
                vec[members[0]] = rate
        return vec

    @cached_property
    def marginal_totals(self) -> np.ndarray:
        """Sum of lambda_S over subsets containing each component."""
        vec = np.zeros(self.n)
        for mask, rate in self.items:
            for i in mask_members(mask):
                vec[i] += rate
        return vec

    @cached_property
    def size_totals(self) -> np.ndarray:
        """a_p = sum of lambda_S over |S| = p, for p = 1..n (index p-1)."""
        vec = np.zeros(self.n)
        for mask, rate in self.items:
            vec[mask.bit_count() - 1] += rate
        return vec

    @cached_property
    def mask_array(self) -> np.ndarray:
        return np.array([mask for mask, _ in self.items], dtype=np.int64)

    @cached_property
    def rate_array(self) -> np.ndarray:
        return np.array([rate for _, rate in self.items], dtype=float)

    @cached_property
    def member_matrix(self) -> np.ndarray:
        """Boolean (n_subsets, n) membership matrix."""
        mat = np.zeros((len(self.items), self.n), dtype=bool)
        for row, (mask, _) in enumerate(self.items):
            mat[row, list(mask_members(mask))] = True
        return mat

    def max_order(self) -> int:
        return max((mask.bit_count() for mask, _ in self.items), default=0)

    def singletons_only(self) -> "SubsetRates":
        return SubsetRates(
            n=self.n,
            items=tuple(
                (mask, rate) for mask, rate in self.items if mask.bit_count() == 1
            ),
        )


@dataclass
class ModelSpec:
    """Loose, user-facing description of one lifetime model.

    Pass through :func:`validate_model` before evaluating anything.  Rate
    map keys may be bitmasks or 1-based index tuples; `shapes` is the
    per-component Weibull shape vector where the family uses one; `alpha`
    and `scales` are the common shape and per-component scale multipliers
    of the common-shape Marshall-Olkin Weibull family; `gamma` and
    `stable_exponent` parameterize the positive-stable-power family;
    `delta` and `m` the additive-interaction Weibull family.
    """

    family: Family | str
    n: int
    rates: Mapping | None = None
    shapes: Sequence[float] | None = None
    gamma: float | None = None
    stable_exponent: float | None = None
    alpha: float | None = None
    scales: Sequence[float] | None = None
    delta: float | None = None
    m: float | None = None


@dataclass(frozen=True)
class ValidatedModel:
    """Immutable, canonicalized model handle accepted by all operations."""

    family: Family
    n: int
    rates: SubsetRates
    shapes: tuple[float, ...] | None = None
    gamma: float | None = None
    stable_exponent: float | None = None
    alpha: float | None = None
    scales: tuple[float, ...] | None = None
    delta: float | None = None
    m: float | None = None

    # -- cached derived quantities -------------------------------------

    @cached_property
    def _shape_vector(self) -> np.ndarray:
        assert self.shapes is not None
        return np.asarray(self.shapes, dtype=float)

    @cached_property
    def _power_terms(self) -> tuple[np.ndarray, np.ndarray]:
        """(rate, exponent) arrays of the series hazard polynomial-in-powers.

        Only meaningful for the Weibull Marshall-Olkin family: a subset S
        contributes rate lambda_S with exponent max of the member shapes.
        """
        shapes = self._shape_vector
        rates = self.rates.rate_array
        exps = np.array(
            [
                max(shapes[i] for i in mask_members(mask))
                for mask, _ in self.rates.items
            ],
            dtype=float,
        )
        return rates, exps

    @cached_property
    def _scale_powers(self) -> np.ndarray:
        """c_i ** alpha for the common-shape family."""
        assert self.scales is not None and self.alpha is not None
        return np.asarray(self.scales, dtype=float) ** self.alpha

    @cached_property
    def _lee_total(self) -> float:
        """Aggregate rate of the common-shape family's series system:

        lambda_L = sum_S lambda_S * max_{i in S} c_i**alpha.
        """
        cpow = self._scale_powers
        return float(
            math.fsum(
                rate * max(cpow[i] for i in mask_members(mask))
                for mask, rate in self.rates.items
            )
        )

    @cached_property
    def _lee_indep_total(self) -> float:
        """sum_i lambda_i * c_i**alpha (singleton part of the hazard)."""
        return float(np.dot(self.rates.singleton_vector, self._scale_powers))


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise ValidationError(message)


def _positive_vector(values, n: int, name: str) -> tuple[float, ...]:
    if values is None:
        raise ValidationError(f"{name}: required for this family")
    vec = tuple(float(v) for v in values)
    if len(vec) != n:
        raise ValidationError(f"{name}: expected {n} entries, got {len(vec)}")
    for i, v in enumerate(vec):
        if not (v > 0) or math.isinf(v):
            raise ValidationError(f"{name}[{i + 1}]: must be > 0, got {v}")
    return vec


def validate_model(spec: ModelSpec) -> ValidatedModel:
    """Check all family invariants and return an immutable model handle.

    Raises :class:`ValidationError` naming the first offending parameter.
    """
    try:
        family = Family(spec.family)
    except ValueError:
        raise ValidationError(f"unknown family {spec.family!r}") from None
    n = spec.n
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise ValidationError(f"n: component count must be >= 1, got {n}")
    if n > MAX_COMPONENTS:
        raise ValidationError(
            f"n: at most {MAX_COMPONENTS} components supported, got {n}"
        )

    rates = SubsetRates.from_mapping(n, spec.rates or {})
    if family not in INTERACTING_FAMILIES and rates.max_order() > 1:
        raise ValidationError(
            f"rates: family {family.value} admits only singleton subsets"
        )
    marginals = rates.marginal_totals
    for i in range(n):
        if not marginals[i] > 0:
            raise ValidationError(f"component {i + 1} has zero total rate")

    shapes = None
    if family in SHAPED_FAMILIES:
        shapes = _positive_vector(spec.shapes, n, "shapes")
    elif spec.shapes is not None:
        raise ValidationError("shapes: not a parameter of this family")

    gamma = stable_exponent = alpha = delta = m = None
    scales = None
    if family in (Family.CROWDER, Family.LEE_II):
        gamma = float(spec.gamma) if spec.gamma is not None else 0.0
        _require(gamma >= 0, f"gamma: must be >= 0, got {gamma}")
        if spec.stable_exponent is None:
            raise ValidationError("stable_exponent: required for this family")
        stable_exponent = float(spec.stable_exponent)
        _require(
            stable_exponent > 0,
            f"stable_exponent: must be > 0, got {stable_exponent}",
        )
        if family is Family.LEE_II:
            _require(gamma == 0.0, "gamma: must be 0 for the LeeII family")
            _require(
                stable_exponent <= 1,
                f"stable_exponent: must be in (0, 1], got {stable_exponent}",
            )
    elif family is Family.LEE_ML:
        if spec.alpha is None:
            raise ValidationError("alpha: required for this family")
        alpha = float(spec.alpha)
        _require(alpha > 0, f"alpha: must be > 0, got {alpha}")
        scales = _positive_vector(spec.scales, n, "scales")
    elif family is Family.LU_BI:
        delta = float(spec.delta) if spec.delta is not None else 0.0
        _require(delta >= 0, f"delta: must be >= 0, got {delta}")
        m = float(spec.m) if spec.m is not None else 1.0
        _require(m > 0, f"m: must be > 0, got {m}")

    for name in ("gamma", "stable_exponent", "alpha", "scales", "delta", "m"):
        value = getattr(spec, name)
        if value is not None and locals()[name] is None:
            raise ValidationError(f"{name}: not a parameter of this family")

    return ValidatedModel(
        family=family,
        n=n,
        rates=rates,
        shapes=shapes,
        gamma=gamma,
        stable_exponent=stable_exponent,
        alpha=alpha,
        scales=scales,
        delta=delta,
        m=m,
    )


# ---------------------------------------------------------------------------
# Joint survival
# ---------------------------------------------------------------------------


def _joint_hazard(model: ValidatedModel, x: np.ndarray) -> float:
    """Joint cumulative hazard -ln F_bar(x_1,...,x_n)."""
    fam = model.family
    rates = model.rates
    if fam is Family.INDEP_EXP:
        return float(np.dot(rates.singleton_vector, x))
    if fam is Family.MOME:
        vals = np.where(rates.member_matrix, x, -np.inf).max(axis=1)
        return float(np.dot(rates.rate_array, vals))
    if fam is Family.MG1:
        prods = np.prod(np.where(rates.member_matrix, x, 1.0), axis=1)
        return float(np.dot(rates.rate_array, prods))
    if fam is Family.INDEP_WEIBULL:
        return float(np.dot(rates.singleton_vector, x ** model._shape_vector))
    if fam is Family.MOMW:
        powered = x ** model._shape_vector
        vals = np.where(rates.member_matrix, powered, -np.inf).max(axis=1)
        return float(np.dot(rates.rate_array, vals))
    if fam in (Family.CROWDER, Family.LEE_II):
        s = float(np.dot(rates.singleton_vector, x ** model._shape_vector))
        g, ell = model.gamma, model.stable_exponent
        return (g + s) ** ell - g**ell
    if fam is Family.LEE_ML:
        powered = model._scale_powers * x**model.alpha
        vals = np.where(rates.member_matrix, powered, -np.inf).max(axis=1)
        return float(np.dot(rates.rate_array, vals))
    if fam is Family.LU_BI:
        lam = rates.singleton_vector
        al = model._shape_vector
        base = float(np.dot(lam, x**al))
        u = float(np.sum(lam ** (1.0 / model.m) * x ** (al / model.m)))
        return base + model.delta * u**model.m
    raise AssertionError(f"unhandled family {fam}")


def joint_sf(model: ValidatedModel, x: Sequence[float]) -> float:
    """Joint survival probability P(X_1 > x_1, ..., X_n > x_n)."""
    vec = np.asarray(x, dtype=float)
    if vec.shape != (model.n,):
        raise DomainError(
            f"x must have length {model.n}, got shape {vec.shape}"
        )
    if np.any(vec < 0) or np.any(np.isnan(vec)):
        raise DomainError("x coordinates must be nonnegative")
    return clamp_unit(math.exp(-_joint_hazard(model, vec)))


# ---------------------------------------------------------------------------
# Series-system metrics
# ---------------------------------------------------------------------------


def series_hazard(model: ValidatedModel, t: float) -> tuple[float, float]:
    """Cumulative hazard H(t) of the series lifetime and its derivative.

    Both come from the family's closed form, not from differencing.
    """
    if not t > 0:
        raise DomainError(f"t must be > 0, got {t}")
    fam = model.family
    rates = model.rates
    if fam in (Family.INDEP_EXP, Family.MOME):
        lam = rates.total
        return lam * t, lam
    if fam is Family.MG1:
        a = rates.size_totals
        powers = np.arange(1, model.n + 1, dtype=float)
        tp = t**powers
        return float(np.dot(a, tp)), float(np.dot(a * powers, tp / t))
    if fam is Family.INDEP_WEIBULL:
        lam = rates.singleton_vector
        al = model._shape_vector
        tp = t**al
        return float(np.dot(lam, tp)), float(np.dot(lam * al, tp / t))
    if fam is Family.MOMW:
        r, e = model._power_terms
        tp = t**e
        return float(np.dot(r, tp)), float(np.dot(r * e, tp / t))
    if fam in (Family.CROWDER, Family.LEE_II):
        lam = rates.singleton_vector
        al = model._shape_vector
        tp = t**al
        s = float(np.dot(lam, tp))
        ds = float(np.dot(lam * al, tp / t))
        g, ell = model.gamma, model.stable_exponent
        b = g + s
        return b**ell - g**ell, ell * b ** (ell - 1.0) * ds
    if fam is Family.LEE_ML:
        lam_l = model._lee_total
        ta = t**model.alpha
        return lam_l * ta, model.alpha * lam_l * ta / t
    if fam is Family.LU_BI:
        lam = rates.singleton_vector
        al = model._shape_vector
        mm = model.m
        tp = t**al
        base = float(np.dot(lam, tp))
        dbase = float(np.dot(lam * al, tp / t))
        root = lam ** (1.0 / mm)
        up = t ** (al / mm)
        u = float(np.sum(root * up))
        du = float(np.sum(root * al * up / t)) / mm
        return (
            base + model.delta * u**mm,
            dbase + model.delta * mm * u ** (mm - 1.0) * du,
        )
    raise AssertionError(f"unhandled family {fam}")


def series_metric(model: ValidatedModel, metric: MetricKind, t: float) -> float:
    """One of SF/FR/RHR/AI for the series lifetime min_i X_i at time t."""
    metric = MetricKind(metric)
    h, dh = series_hazard(model, t)
    if metric is MetricKind.SF:
        return clamp_unit(math.exp(-h))
    if metric is MetricKind.FR:
        return dh
    if h <= 0.0:
        raise SingularityError(
            f"survival is 1 to machine precision at t={t}; "
            f"{metric.value} undefined"
        )
    if metric is MetricKind.AI:
        return t * dh / h
    # RHR = H' / (exp(H) - 1); for very large H the denominator overflows,
    # but the limit is H'*exp(-H) which underflows to 0 consistently.
    if h > 700.0:
        return dh * math.exp(-h)
    return dh / math.expm1(h)


# ---------------------------------------------------------------------------
# Independent counterpart and aggregates
# ---------------------------------------------------------------------------


@lru_cache(maxsize=1024)
def independent_counterpart(model: ValidatedModel) -> ValidatedModel:
    """The same model with all dependence (interaction) structure removed.

    Marshall-Olkin style families keep their singleton rates; the
    positive-stable family degenerates to independent Weibull marginals;
    the additive-interaction family drops its interaction weight.
    Idempotent by construction.
    """
    fam = model.family
    if fam in (Family.INDEP_EXP, Family.INDEP_WEIBULL):
        return model
    singles = model.rates.singletons_only()
    if fam in (Family.MOME, Family.MG1):
        return ValidatedModel(family=Family.INDEP_EXP, n=model.n, rates=singles)
    if fam is Family.MOMW:
        return ValidatedModel(
            family=Family.INDEP_WEIBULL,
            n=model.n,
            rates=singles,
            shapes=model.shapes,
        )
    if fam in (Family.CROWDER, Family.LEE_II):
        return ValidatedModel(
            family=Family.INDEP_WEIBULL,
            n=model.n,
            rates=singles,
            shapes=model.shapes,
        )
    if fam is Family.LEE_ML:
        if singles == model.rates:
            return model
        return replace(model, rates=singles)
    if fam is Family.LU_BI:
        if model.delta == 0.0:
            return model
        return replace(model, delta=0.0)
    raise AssertionError(f"unhandled family {fam}")


@dataclass(frozen=True)
class AggregateRecord:
    """Family-dependent derived constants of the series system."""

    family: Family
    total_rate: float | None = None
    power_coeffs: tuple[float, ...] | None = None
    hazard_terms: tuple[tuple[float, float], ...] | None = None
    raw: tuple[tuple[str, object], ...] | None = None


def aggregates(model: ValidatedModel) -> AggregateRecord:
    """Derived constants: aggregate rate, power coefficients, or term list."""
    fam = model.family
    if fam in (Family.INDEP_EXP, Family.MOME):
        return AggregateRecord(family=fam, total_rate=model.rates.total)
    if fam is Family.MG1:
        return AggregateRecord(
            family=fam, power_coeffs=tuple(model.rates.size_totals)
        )
    if fam in (Family.INDEP_WEIBULL, Family.MOMW):
        if fam is Family.MOMW:
            r, e = model._power_terms
            terms = tuple(zip(map(float, r), map(float, e)))
        else:
            terms = tuple(
                zip(
                    map(float, model.rates.singleton_vector),
                    map(float, model.shapes),
                )
            )
        return AggregateRecord(family=fam, hazard_terms=terms)
    if fam is Family.LEE_ML:
        return AggregateRecord(family=fam, total_rate=model._lee_total)
    if fam in (Family.CROWDER, Family.LEE_II):
        return AggregateRecord(
            family=fam,
            raw=(
                ("gamma", model.gamma),
                ("stable_exponent", model.stable_exponent),
                ("lambdas", tuple(map(float, model.rates.singleton_vector))),
                ("shapes", model.shapes),
            ),
        )
    if fam is Family.LU_BI:
        return AggregateRecord(
            family=fam,
            raw=(
                ("delta", model.delta),
                ("m", model.m),
                ("lambdas", tuple(map(float, model.rates.singleton_vector))),
                ("shapes", model.shapes),
            ),
        )
    raise AssertionError(f"unhandled family {fam}")
