"""Pair classification, Lehmer candidates and spacing statistics."""

import math

import numpy as np
import pytest

from hardylab import pairs
from hardylab.errors import DomainError, LengthMismatchError
from hardylab.pairs import PairClass
from hardylab.roots import ZeroList


def _zl(zs, label="test", tol=1e-10):
    zs = tuple(zs)
    return ZeroList(
        label=label, t_lo=zs[0] - 1.0, t_hi=zs[-1] + 1.0,
        zeros=zs, refine_tol=tol, step=0.01,
    )


def test_classify_all_four_classes_and_degenerate():
    z0 = [10.0, 20.0, 30.0, 40.0, 50.0, 60.0]
    za = [
        10.1,  # right shift
        19.9,  # left shift  -> pair 0: (+,-) lehmer
        30.1,  # pair 1: (-,+) gordon
        40.2,  # pair 2: (+,+) right
        49.9,  # pair 3: (+,-) lehmer
        60.0,  # pair 4: degenerate (zero shift)
    ]
    records = pairs.classify_pairs(_zl(za), _zl(z0))
    got = [r.pair_class for r in records]
    assert got == [
        PairClass.LEHMER,
        PairClass.GORDON,
        PairClass.RIGHT,
        PairClass.LEHMER,
        PairClass.DEGENERATE,
    ]
    # left class needs its own case
    za_left = [9.8, 19.9, 29.85]
    records = pairs.classify_pairs(_zl(za_left), _zl([10.0, 20.0, 30.0]))
    assert [r.pair_class for r in records] == [PairClass.LEFT, PairClass.LEFT]


def test_classify_degenerate_within_tolerance():
    z0 = [10.0, 20.0]
    za = [10.0 + 5e-11, 19.5]
    records = pairs.classify_pairs(_zl(za), _zl(z0), tol=1e-10)
    assert records[0].pair_class == PairClass.DEGENERATE


def test_classify_records_carry_shifts_and_gap():
    records = pairs.classify_pairs(_zl([10.2, 19.7]), _zl([10.0, 20.0]))
    r = records[0]
    assert r.shift_left == pytest.approx(0.2)
    assert r.shift_right == pytest.approx(-0.3)
    assert r.gap == pytest.approx(9.5)
    assert r.pair_class == PairClass.LEHMER


def test_classify_count_mismatch_raises():
    with pytest.raises(LengthMismatchError):
        pairs.classify_pairs(_zl([10.0, 20.0]), _zl([10.0, 20.0, 30.0]))


def test_gue_pair_correlation_limits():
    assert pairs.gue_pair_correlation(0.0) == 0.0
    assert pairs.gue_pair_correlation(1.0) == pytest.approx(1.0)
    assert pairs.gue_pair_correlation(0.5) == pytest.approx(
        1.0 - (2.0 / math.pi) ** 2
    )


def test_gap_statistics_uniform_synthetic():
    # unit-spaced zeros with unit density: all normalized gaps exactly 1
    zs = [100.0 + k for k in range(30)]
    report = pairs.gap_statistics(_zl(zs), density=lambda t: 1.0)
    assert all(g == pytest.approx(1.0) for g in report.normalized_gaps)
    assert report.min_gap[2] == pytest.approx(1.0)
    # distances at u = 1, 2 start their bins; u = 3 falls in the closed
    # final bin whose left edge is 2.9
    counts = np.asarray(report.counts)
    edges = np.asarray(report.bin_edges)
    hot = {round(float(edges[i]), 10) for i in np.nonzero(counts)[0]}
    assert hot == {1.0, 2.0, 2.9}
    d = report.to_dict()
    assert d["schema"] == "hardylab.spacing.v1"
    assert d["min_gap"]["gap"] == pytest.approx(1.0)


def test_gap_statistics_needs_enough_zeros():
    with pytest.raises(DomainError):
        pairs.gap_statistics(_zl([10.0, 11.0, 12.0]))


def test_gap_statistics_min_gap_location():
    zs = [100.0, 101.0, 101.2, 103.0] + [104.0 + k for k in range(20)]
    report = pairs.gap_statistics(_zl(zs), density=lambda t: 1.0)
    assert report.min_gap == pytest.approx((101.0, 101.2, 0.2))
