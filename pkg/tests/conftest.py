"""Shared helpers: deterministic random model generation per family."""

from itertools import combinations

import numpy as np
import pytest

from deperr import Family, ModelSpec, validate_model

ALL_FAMILIES = list(Family)


def make_subset_rates(rng, n, max_order=None, low=0.05, high=1.5,
                      include_prob=0.6, require_interaction=False):
    """Random rate map with positive singletons and optional interactions."""
    rates = {(i,): float(rng.uniform(low, high)) for i in range(1, n + 1)}
    if max_order is None:
        max_order = n
    picked = 0
    pool = [
        combo
        for size in range(2, max_order + 1)
        for combo in combinations(range(1, n + 1), size)
    ]
    for combo in pool:
        if rng.random() < include_prob:
            rates[combo] = float(rng.uniform(low, high))
            picked += 1
    if require_interaction and not picked and pool:
        combo = pool[int(rng.integers(len(pool)))]
        rates[combo] = float(rng.uniform(low, high))
    return rates


def singleton_rates(rng, n, low=0.05, high=1.5):
    return {(i,): float(rng.uniform(low, high)) for i in range(1, n + 1)}


def mg1_rates(rng, n, low=0.05, high=1.5, coupling=0.3,
              require_interaction=True):
    """Product-interaction rates inside the validity region.

    Interaction rates are drawn as a fraction of the product of the member
    singleton rates; empirically the joint survival stops being a genuine
    distribution when they grow much beyond that.
    """
    rates = {(i,): float(rng.uniform(low, high)) for i in range(1, n + 1)}
    pool = [
        combo
        for size in range(2, n + 1)
        for combo in combinations(range(1, n + 1), size)
    ]
    picked = 0
    for combo in pool:
        if rng.random() < 0.6:
            prod = float(np.prod([rates[(i,)] for i in combo]))
            rates[combo] = float(rng.uniform(0.05, coupling)) * prod
            picked += 1
    if require_interaction and not picked and pool:
        combo = pool[int(rng.integers(len(pool)))]
        prod = float(np.prod([rates[(i,)] for i in combo]))
        rates[combo] = float(rng.uniform(0.05, coupling)) * prod
    return rates


def random_model(family, n, rng, require_interaction=True,
                 shape_range=(0.6, 2.5), rate_range=(0.05, 1.5)):
    """A random validated model of the given family."""
    family = Family(family)
    low, high = rate_range
    if family is Family.MG1:
        rates = mg1_rates(rng, n, low=low, high=high,
                          require_interaction=require_interaction)
    elif family in (Family.MOME, Family.MOMW, Family.LEE_ML):
        rates = make_subset_rates(
            rng, n, low=low, high=high, require_interaction=require_interaction
        )
    else:
        rates = singleton_rates(rng, n, low=low, high=high)

    shapes = tuple(float(rng.uniform(*shape_range)) for _ in range(n))
    spec = ModelSpec(family=family, n=n, rates=rates)
    if family in (Family.INDEP_WEIBULL, Family.MOMW, Family.CROWDER,
                  Family.LEE_II, Family.LU_BI):
        spec.shapes = shapes
    if family is Family.CROWDER:
        spec.gamma = float(rng.uniform(0.0, 1.0))
        spec.stable_exponent = float(rng.uniform(0.3, 1.0))
    elif family is Family.LEE_II:
        spec.gamma = 0.0
        spec.stable_exponent = float(rng.uniform(0.3, 1.0))
    elif family is Family.LEE_ML:
        spec.alpha = float(rng.uniform(0.5, 2.5))
        spec.scales = tuple(float(rng.uniform(0.5, 2.0)) for _ in range(n))
    elif family is Family.LU_BI:
        spec.delta = float(rng.uniform(0.1, 1.0) if require_interaction
                           else 0.0)
        # m beyond 2 empirically breaks joint-distribution validity
        spec.m = float(rng.uniform(0.5, 2.0))
    return validate_model(spec)


@pytest.fixture
def rng():
    return np.random.default_rng(20260823)
