"""The generalized Hardy function Z_alpha and its companions.

Everything plan-based goes through one shared TermTable so that the
algebraic identities between Z_alpha, Y_alpha and the Q_j sums hold to
rounding error by construction.  An Euler-Maclaurin zeta evaluator serves
as the independent oracle; it never touches the weighted-sum code path.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass

import numpy as np

from . import specfun
from .errors import DegeneratePlanError, DomainError, PoleError
from .weights import WeightMode, WeightPlan, delta_profile

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class Perturbation:
    """Phase shift phi applied to the single term with index n0 >= 2."""

    n0: int
    phi: float

    def __post_init__(self) -> None:
        if self.n0 < 2:
            raise DomainError(f"Perturbation: n0 must be >= 2, got {self.n0}")


@dataclass(frozen=True)
class TermTable:
    """Weighted cosine/sine terms of the Dirichlet series at fixed t.

    cos_terms[i] = cos(theta - t log n + phi[n == n0]) * delta_n  with
    n = i + 1; sin_terms analogously.  Shared by Z_alpha, Y_alpha and Q_j.
    """

    t: float
    theta: float
    plan: WeightPlan
    perturbation: Perturbation | None
    cos_terms: np.ndarray
    sin_terms: np.ndarray

    @property
    def m(self) -> int:
        return len(self.cos_terms)

    @property
    def n(self) -> np.ndarray:
        return np.arange(1, self.m + 1)


@dataclass(frozen=True)
class GeneralizedHardyEval:
    t: float
    alpha: float
    z: float
    y: float


def plan_for(t: float, mode: WeightMode) -> WeightPlan:
    """Default plan at t for the given mode."""
    if mode is WeightMode.EXACT_CESARO:
        return WeightPlan.exact_for(t)
    if mode is WeightMode.SIGMOID:
        return WeightPlan.sigmoid_for(t)
    return WeightPlan.cutoff_for(t)


def term_table(
    t: float,
    plan: WeightPlan | None = None,
    perturbation: Perturbation | None = None,
) -> TermTable:
    """Build the shared term table at t.

    Requires t >= 10 so that default plans have at least three terms.
    """
    if plan is None:
        plan = WeightPlan.exact_for(t)
    if plan.m < 3:
        raise DegeneratePlanError(
            f"term_table: plan has m = {plan.m} < 3 terms (t = {t})"
        )
    th = specfun.theta(t).theta
    n = np.arange(1, plan.m + 1)
    phase = th - t * np.log(n)
    if perturbation is not None:
        if perturbation.n0 <= plan.m:
            phase = phase.copy()
            phase[perturbation.n0 - 1] += perturbation.phi
    w = delta_profile(plan)
    return TermTable(
        t=float(t),
        theta=th,
        plan=plan,
        perturbation=perturbation,
        cos_terms=np.cos(phase) * w,
        sin_terms=np.sin(phase) * w,
    )


def _alpha_powers(table: TermTable, alpha: float) -> np.ndarray:
    if alpha == 0.0:
        return np.ones(table.m)
    return np.exp(-alpha * np.log(table.n))


def z_alpha(table: TermTable, alpha: float) -> float:
    """Z_alpha = sum_n n^{-alpha} cos_terms[n]."""
    return float(np.dot(_alpha_powers(table, alpha), table.cos_terms))


def y_alpha(table: TermTable, alpha: float) -> float:
    """Y_alpha = -sum_n n^{-alpha} sin_terms[n]."""
    return -float(np.dot(_alpha_powers(table, alpha), table.sin_terms))


def evaluate(table: TermTable, alpha: float) -> GeneralizedHardyEval:
    return GeneralizedHardyEval(
        t=table.t, alpha=alpha, z=z_alpha(table, alpha), y=y_alpha(table, alpha)
    )


def rs_psi(p: float) -> float:
    """First Riemann-Siegel correction shape cos(2pi(p^2 - p - 1/16))/cos(2pi p)."""
    return math.cos(TWO_PI * (p * p - p - 1.0 / 16.0)) / math.cos(TWO_PI * p)


def z_riemann_siegel(t: float) -> float:
    """Riemann-Siegel main sum plus the first correction term.

    Absolute error O(t^{-3/4}); the domain starts at t = 20 where the main
    sum has at least one term and the correction is still meaningful.
    """
    if t < 20.0:
        raise DomainError(f"z_riemann_siegel: t must be >= 20, got {t}")
    th = specfun.theta(t).theta
    a = math.sqrt(t / TWO_PI)
    big_n = int(math.floor(a))
    p = a - big_n
    n = np.arange(1, big_n + 1)
    main = 2.0 * float(np.sum(np.cos(th - t * np.log(n)) / np.sqrt(n)))
    corr = (-1.0) ** (big_n + 1) * (t / TWO_PI) ** (-0.25) * rs_psi(p)
    return main + corr


# ---------------------------------------------------------------------------
# Euler-Maclaurin zeta oracle (independent of everything above)
# ---------------------------------------------------------------------------

# B_{2k} for k = 1..12, used by the Euler-Maclaurin tail.
_B2K = (
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
)


def default_em_terms(s: complex) -> int:
    return max(32, int(2.0 * abs(s.imag)) + 32)


def zeta_euler_maclaurin(
    s: complex, terms: int | None = None, bernoulli_order: int = 10
) -> complex:
    """zeta(s) on Re(s) > -1 by Euler-Maclaurin summation.

    With terms ~ 2|Im s| and bernoulli_order = 10 the absolute error stays
    below ~1e-10 for |Im s| <= 1e4.
    """
    s = complex(s)
    if s == 1.0:
        raise PoleError("zeta_euler_maclaurin: pole at s = 1")
    if s.real <= -1.0:
        raise DomainError(f"zeta_euler_maclaurin: need Re(s) > -1, got {s}")
    if not 1 <= bernoulli_order <= len(_B2K):
        raise DomainError(
            f"zeta_euler_maclaurin: bernoulli_order must be in [1, {len(_B2K)}]"
        )
    if terms is None:
        terms = default_em_terms(s)
    if terms <= abs(s.imag) / 2.0:
        warnings.warn(
            "zeta_euler_maclaurin: terms <= |Im s|/2, accuracy degraded",
            stacklevel=2,
        )
    big_n = int(terms)
    n = np.arange(1, big_n)
    head = complex(np.sum(np.exp(-s * np.log(n)))) if big_n > 1 else 0.0 + 0.0j
    n_pow = cmath.exp(-s * math.log(big_n))  # N^{-s}
    total = head + big_n * n_pow / (s - 1.0) + 0.5 * n_pow
    # Tail: sum_k B_{2k}/(2k)! * s(s+1)...(s+2k-2) * N^{-s-2k+1}
    poch = s  # rising product s(s+1)...(s+2k-2)
    power = n_pow / big_n  # N^{-s-2k+1}
    for k in range(1, bernoulli_order + 1):
        total += _B2K[k - 1] / math.factorial(2 * k) * poch * power
        if k < bernoulli_order:
            poch *= (s + 2 * k - 1) * (s + 2 * k)
            power /= big_n * big_n
    return total


def z_alpha_oracle(t: float, alpha: float) -> tuple[float, float]:
    """(Z_alpha, Y_alpha) from zeta(alpha + it) e^{i theta(t)} directly."""
    if t < 0.0:
        raise DomainError(f"z_alpha_oracle: t must be >= 0, got {t}")
    if alpha <= -1.0:
        raise DomainError(f"z_alpha_oracle: alpha must be > -1, got {alpha}")
    th = specfun.theta(t).theta
    w = zeta_euler_maclaurin(complex(alpha, t)) * cmath.exp(1j * th)
    return (w.real, w.imag)
