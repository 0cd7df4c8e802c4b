"""Root scanning/refinement, Gram points and tangency detection."""

import math

import pytest

from hardylab import hardy, roots, specfun
from hardylab.errors import BracketError, DomainError
from hardylab.weights import WeightMode

# mpmath zetazero, frozen: imaginary parts of the first five zeta zeros.
FIRST_ZETA_ZEROS = (
    14.1347251417346938,
    21.022039638771555,
    25.0108575801456888,
    30.4248761258595132,
    32.9350615877391897,
)


def test_scan_and_refine_on_sine():
    f = math.sin
    brackets = roots.scan_sign_changes(f, 0.5, 10.0, 0.1)
    zs = [roots.refine_root(f, br, 1e-12) for br in brackets]
    assert zs == pytest.approx([math.pi, 2 * math.pi, 3 * math.pi], abs=1e-10)


def test_scan_degenerate_bracket_at_grid_zero():
    f = lambda t: t - 2.0
    brackets = roots.scan_sign_changes(f, 1.0, 3.0, 0.5)
    assert (2.0, 2.0) in brackets
    assert roots.refine_root(f, (2.0, 2.0)) == 2.0


def test_refine_rejects_bad_bracket():
    with pytest.raises(BracketError):
        roots.refine_root(math.cos, (0.1, 0.2))


def test_scan_argument_validation():
    with pytest.raises(DomainError):
        roots.scan_sign_changes(math.sin, 2.0, 1.0, 0.1)
    with pytest.raises(DomainError):
        roots.scan_sign_changes(math.sin, 1.0, 2.0, 0.0)


def test_oracle_zeros_match_reference():
    f = roots.z_oracle_function(0.5)
    zl = roots.zeros_of(f, "z_oracle", 12.0, 34.0, 0.01, 1e-10)
    assert len(zl.zeros) == len(FIRST_ZETA_ZEROS)
    for got, ref in zip(zl.zeros, FIRST_ZETA_ZEROS):
        assert abs(got - ref) <= 1e-8


def test_zerolist_dict_roundtrip():
    zl = roots.zeros_of(math.sin, "sine", 1.0, 7.0, 0.1, 1e-10)
    again = roots.ZeroList.from_dict(zl.to_dict())
    assert again == zl


def test_gram_points_first_kind_hits_theta_targets():
    pts = roots.gram_points(1, 1, 5)
    for p in pts:
        target = (p.index - 1) * math.pi
        assert abs(specfun.theta(p.t).theta - target) <= 1e-9 * max(1.0, target)
    ts = [p.t for p in pts]
    assert all(b > a for a, b in zip(ts, ts[1:]))


def test_gram_points_second_kind_interleaves_first():
    g1 = roots.gram_points(1, 2, 3)
    g2 = roots.gram_points(2, 3, 5)
    # theta = (n-1) pi/2 at odd n coincides with first-kind points
    assert abs(g2[0].t - g1[0].t) <= 1e-9
    assert abs(g2[2].t - g1[1].t) <= 1e-9
    assert g2[0].t < g2[1].t < g2[2].t


def test_gram_points_third_kind_are_z0_zeros():
    pts = roots.gram_points(3, 5, 3, mode=WeightMode.SIGMOID)
    for p in pts:
        f = roots.z_alpha_function(0.0, WeightMode.SIGMOID, p.t - 1.0, p.t + 1.0)
        assert abs(f(p.t)) <= 1e-8


def test_gram_points_below_floor_rejected():
    with pytest.raises(DomainError):
        roots.gram_points(1, -5, 1)
    with pytest.raises(DomainError):
        roots.gram_points(4, 1, 1)


def test_frozen_plan_midpoint_and_sigmoid_tracking():
    plan = roots.frozen_plan(WeightMode.EXACT_CESARO, 90.0, 110.0)
    assert plan is not None
    assert plan.m == int(100.0 / math.pi)
    assert roots.frozen_plan(WeightMode.SIGMOID, 90.0, 110.0) is None


def test_detect_even_zero_on_parabola():
    f = lambda t: (t - 3.0) ** 2
    hits = roots.detect_even_zero(f, 2.0, 4.0, 0.05, eps=1e-6)
    assert len(hits) == 1
    t_c, f_c = hits[0]
    assert abs(t_c - 3.0) <= 1e-4
    assert abs(f_c) <= 1e-6


def test_detect_even_zero_ignores_sign_changes_and_high_minima():
    assert roots.detect_even_zero(math.sin, 2.5, 3.5, 0.05) == []
    f = lambda t: (t - 3.0) ** 2 + 0.5
    assert roots.detect_even_zero(f, 2.0, 4.0, 0.05) == []


def test_simulate_no_crossing_reports_empty():
    # tiny phase shift cannot merge a zero pair in this window
    report = roots.simulate_critical_pair(
        60.0, 63.0, 3, 1e-6, 0.45, 0.55, step=0.01, alpha_steps=2
    )
    assert report["alpha_star"] is None
    assert report["tangency"] is None
    assert len(report["sweep"]) == 3
