"""Regularization weights for the divergent Dirichlet cosine series.

Three interchangeable modes behind one plan object:

* ``EXACT_CESARO`` -- the order-r Cesaro weights
  delta_{m,n} = C(m-n+r, r) / C(m-1+r, r), computed in log space;
* ``SIGMOID`` -- the smooth surrogate 1/(1 + exp(n - t/pi));
* ``SHARP_CUTOFF`` -- plain truncation after m terms.

The exact weights at m = r decay roughly like 2^{1-n}, which disagrees
with the sigmoid surrogate (flat near 1 until n ~ t/pi).  Both are kept
so the discrepancy can be measured with delta_profile rather than hidden.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DomainError, LengthMismatchError

_SIGMOID_FLOOR = 1e-16
# exp of this exceeds 1/_SIGMOID_FLOOR, so the weight drops below the floor
_SIGMOID_SPAN = math.log(1.0 / _SIGMOID_FLOOR)


class WeightMode(str, enum.Enum):
    EXACT_CESARO = "exact"
    SIGMOID = "sigmoid"
    SHARP_CUTOFF = "cutoff"


@dataclass(frozen=True)
class WeightPlan:
    """Immutable description of one regularization scheme.

    m is the term count, r the Cesaro order (EXACT_CESARO only) and
    t_anchor fixes the sigmoid midpoint at t_anchor/pi (SIGMOID only).
    """

    mode: WeightMode
    m: int
    r: int = 0
    t_anchor: float | None = None

    def __post_init__(self) -> None:
        if self.m < 1:
            raise DomainError(f"WeightPlan: m must be >= 1, got {self.m}")
        if self.r < 0:
            raise DomainError(f"WeightPlan: r must be >= 0, got {self.r}")
        if self.mode is WeightMode.SIGMOID and self.t_anchor is None:
            raise DomainError("WeightPlan: sigmoid mode needs t_anchor")

    @classmethod
    def exact_for(cls, t: float) -> "WeightPlan":
        """The paper's default choice m = r = floor(t/pi)."""
        m = int(math.floor(t / math.pi))
        return cls(mode=WeightMode.EXACT_CESARO, m=m, r=m)

    @classmethod
    def sigmoid_for(cls, t: float) -> "WeightPlan":
        """Anchor at t; keep terms until the weight falls below 1e-16."""
        m = sigmoid_length(t)
        return cls(mode=WeightMode.SIGMOID, m=m, t_anchor=float(t))

    @classmethod
    def cutoff_for(cls, t: float) -> "WeightPlan":
        m = int(math.floor(t / math.pi))
        return cls(mode=WeightMode.SHARP_CUTOFF, m=m)


def sigmoid_length(t: float) -> int:
    """Smallest n at which the sigmoid weight drops below 1e-16."""
    return max(1, int(math.ceil(t / math.pi + _SIGMOID_SPAN)))


def log_binomial(a: int, b: int) -> float:
    """log C(a, b) via real log-gamma; relative error ~1e-14."""
    if b < 0 or a < 0:
        raise DomainError(f"log_binomial: negative argument ({a}, {b})")
    if b > a:
        raise DomainError(f"log_binomial: need b <= a, got ({a}, {b})")
    return math.lgamma(a + 1) - math.lgamma(b + 1) - math.lgamma(a - b + 1)


# math.comb stays cheap up to here; beyond it delta falls back to log space
_EXACT_COMB_LIMIT = 6000


def delta(plan: WeightPlan, n: int) -> float:
    """Weight of the n-th series term under the given plan."""
    if n < 1:
        raise DomainError(f"delta: n must be >= 1, got {n}")
    if plan.mode is WeightMode.EXACT_CESARO:
        if n > plan.m:
            return 0.0
        if plan.m - 1 + plan.r <= _EXACT_COMB_LIMIT:
            num = math.comb(plan.m - n + plan.r, plan.r)
            den = math.comb(plan.m - 1 + plan.r, plan.r)
            return num / den
        return math.exp(
            log_binomial(plan.m - n + plan.r, plan.r)
            - log_binomial(plan.m - 1 + plan.r, plan.r)
        )
    if plan.mode is WeightMode.SIGMOID:
        x = n - plan.t_anchor / math.pi
        if x > 0.0:
            e = math.exp(-x)
            return e / (1.0 + e)
        return 1.0 / (1.0 + math.exp(x))
    return 1.0 if n <= plan.m else 0.0


def delta_profile(plan: WeightPlan) -> np.ndarray:
    """The full weight vector [delta(1), ..., delta(m)].

    Exact-Cesaro weights use the step recurrence
    delta_{n+1} = delta_n * (m-n)/(m-n+r), one rounding per step.
    """
    if plan.mode is WeightMode.EXACT_CESARO:
        out = np.empty(plan.m)
        d = 1.0
        for n in range(1, plan.m + 1):
            out[n - 1] = d
            d *= (plan.m - n) / (plan.m - n + plan.r) if plan.r else 1.0
        return out
    return np.array([delta(plan, n) for n in range(1, plan.m + 1)])


def cesaro_sum(terms, plan: WeightPlan) -> float:
    """Weighted sum of the first m terms: sum_n terms[n] * delta(plan, n).

    Exact-Cesaro mode accumulates in exact rational arithmetic when the
    binomials are small enough, so symmetric cases (Grandi at even m,
    order 1) come out exactly.
    """
    terms = np.asarray(terms, dtype=float)
    if len(terms) < plan.m:
        raise LengthMismatchError(
            f"cesaro_sum: need at least {plan.m} terms, got {len(terms)}"
        )
    if (
        plan.mode is WeightMode.EXACT_CESARO
        and plan.m - 1 + plan.r <= _EXACT_COMB_LIMIT
    ):
        den = math.comb(plan.m - 1 + plan.r, plan.r)
        total = Fraction(0)
        for n in range(1, plan.m + 1):
            total += Fraction(float(terms[n - 1])) * math.comb(
                plan.m - n + plan.r, plan.r
            )
        return float(total / den)
    return float(np.dot(terms[: plan.m], delta_profile(plan)))
