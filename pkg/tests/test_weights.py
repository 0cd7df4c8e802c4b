"""Regularization weights against a brute-force iterated-sum oracle.

The oracle computes the order-r Cesaro value of a finite series as the
r-fold cumulative sum of the partial sums divided by the same transform
applied to the all-ones sequence, which is the textbook definition the
binomial-ratio weights must reproduce.
"""

import math

import numpy as np
import pytest

from hardylab import weights
from hardylab.errors import DomainError, LengthMismatchError
from hardylab.weights import WeightMode, WeightPlan


def cesaro_oracle(terms, r):
    """(C, r) value of sum(terms) by iterated cumulative sums."""
    s = np.cumsum(np.asarray(terms, dtype=float))
    e = np.ones(len(terms))
    for _ in range(r):
        s = np.cumsum(s)
        e = np.cumsum(e)
    return s[-1] / e[-1]


def test_weights_match_iterated_sum_oracle():
    rng = np.random.default_rng(20240817)
    for seed in range(100):
        m = int(rng.integers(2, 51))
        r = int(rng.integers(0, 4))
        terms = rng.standard_normal(m)
        plan = WeightPlan(mode=WeightMode.EXACT_CESARO, m=m, r=r)
        got = weights.cesaro_sum(terms, plan)
        ref = cesaro_oracle(terms, r)
        assert abs(got - ref) <= 1e-12 * max(1.0, abs(ref)), (seed, m, r)


def test_grandi_even_m_exactly_half():
    for m in (4, 10, 40, 50):
        terms = [(-1.0) ** n for n in range(m)]
        plan = WeightPlan(mode=WeightMode.EXACT_CESARO, m=m, r=1)
        assert weights.cesaro_sum(terms, plan) == 0.5


def test_delta_endpoints_and_monotonicity():
    plan = WeightPlan(mode=WeightMode.EXACT_CESARO, m=100, r=100)
    profile = weights.delta_profile(plan)
    assert profile[0] == 1.0
    assert abs(profile[1] - (plan.m - 1) / (2 * plan.m - 1)) <= 1e-15
    assert all(b < a for a, b in zip(profile, profile[1:]))
    # geometric-like decay at m = r: roughly halving per step early on
    assert 0.4 < profile[2] / profile[1] < 0.55


def test_delta_profile_matches_pointwise_delta():
    plan = WeightPlan(mode=WeightMode.EXACT_CESARO, m=60, r=3)
    profile = weights.delta_profile(plan)
    for n in range(1, plan.m + 1):
        assert abs(profile[n - 1] - weights.delta(plan, n)) <= 1e-13


def test_delta_log_space_branch_consistent():
    # straddle the exact-comb limit with the same (m, r) shape
    lo = WeightPlan(mode=WeightMode.EXACT_CESARO, m=2000, r=2000)
    hi = WeightPlan(mode=WeightMode.EXACT_CESARO, m=8000, r=8000)
    for plan in (lo, hi):
        assert abs(weights.delta(plan, 1) - 1.0) <= 1e-11
        d2 = weights.delta(plan, 2)
        assert abs(d2 - (plan.m - 1) / (2 * plan.m - 1)) <= 1e-11


def test_sigmoid_profile_shape():
    t = 300.0
    plan = WeightPlan.sigmoid_for(t)
    profile = weights.delta_profile(plan)
    mid = t / math.pi
    assert profile[0] > 1.0 - 1e-12
    assert profile[-1] <= 1e-15
    n_mid = int(round(mid))
    assert 0.3 < profile[n_mid - 1] < 0.7


def test_sigmoid_length_covers_floor():
    for t in (50.0, 300.0, 7005.0):
        plan = WeightPlan.sigmoid_for(t)
        assert weights.delta(plan, plan.m) <= 1e-15
        assert weights.delta(plan, plan.m - 40) > 1e-16


def test_cutoff_profile_is_indicator():
    plan = WeightPlan.cutoff_for(100.0)
    profile = weights.delta_profile(plan)
    assert np.all(profile == 1.0)
    assert weights.delta(plan, plan.m + 1) == 0.0


def test_plan_validation():
    with pytest.raises(DomainError):
        WeightPlan(mode=WeightMode.EXACT_CESARO, m=0)
    with pytest.raises(DomainError):
        WeightPlan(mode=WeightMode.EXACT_CESARO, m=5, r=-1)
    with pytest.raises(DomainError):
        WeightPlan(mode=WeightMode.SIGMOID, m=5)
    with pytest.raises(LengthMismatchError):
        weights.cesaro_sum([1.0, 2.0], WeightPlan(mode=WeightMode.SHARP_CUTOFF, m=5))
