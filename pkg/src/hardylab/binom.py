"""Binomial-series decomposition of the generalized Hardy function.

Writing n^{-alpha} = (1 - (n-1)/n)^alpha as a binomial series turns
Z_alpha into Z_0 plus a signed series over the tail sums
Q_j = sum_{n>=2} ((n-1)/n)^j T_n.  The truncated partial sums form the
sequence Z_{alpha,k} whose zeros migrate from the zeros of Z_0 toward the
zeros of Z_alpha; the measurement tools at the bottom quantify that
migration instead of asserting it.

The expansion index is called j throughout; the paper-facing letter k is
reserved for the Cesaro order to avoid a symbol collision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import hardy, roots, specfun
from .errors import ConvergenceError, DomainError
from .hardy import TermTable
from .weights import WeightPlan

_MAX_EXPANSION_DEPTH = 10**6
_TAIL_QUIET_RUN = 10


def general_binomial(alpha: float, j: int) -> float:
    """Generalized binomial coefficient alpha(alpha-1)...(alpha-j+1)/j!.

    Incremental product, so no factorial overflow at large j.
    """
    if j < 0:
        raise DomainError(f"general_binomial: j must be >= 0, got {j}")
    b = 1.0
    for i in range(1, j + 1):
        b *= (alpha - i + 1) / i
    return b


def q_k(table: TermTable, j: int) -> float:
    """Q_j = sum_{n=2}^m ((n-1)/n)^j * cos_terms[n]."""
    if j < 1:
        raise DomainError(f"q_k: j must be >= 1, got {j}")
    n = table.n[1:].astype(float)
    ratio = (n - 1.0) / n
    return float(np.dot(ratio**j, table.cos_terms[1:]))


def reconstruct_z_alpha(
    table: TermTable, alpha: float, tol: float = 1e-13
) -> tuple[float, int]:
    """Z_alpha rebuilt from Z_0 via the binomial series, adaptive depth.

    Stops once ten consecutive increments are each below tol; returns the
    value and the index of the last increment that still exceeded tol.
    For alpha < 0 the series is experimental (decay of |Q_j| is only a
    necessary condition); divergence trips the depth cap.
    """
    n = table.n[1:].astype(float)
    ratio = (n - 1.0) / n
    v = table.cos_terms[1:].copy()  # ((n-1)/n)^j * T_n, updated in place
    value = hardy.z_alpha(table, 0.0)
    b = 1.0
    quiet = 0
    j_used = 0
    j = 0
    while quiet < _TAIL_QUIET_RUN:
        j += 1
        if j > _MAX_EXPANSION_DEPTH:
            raise ConvergenceError(
                f"reconstruct_z_alpha: no convergence after {_MAX_EXPANSION_DEPTH} terms"
            )
        b *= (alpha - j + 1) / j
        if b == 0.0:
            break  # alpha is a non-negative integer; series terminates
        v *= ratio
        increment = (-1.0) ** j * b * float(v.sum())
        value += increment
        if abs(increment) < tol:
            quiet += 1
        else:
            quiet = 0
            j_used = j
    return value, j_used


@dataclass(frozen=True)
class ExpansionEval:
    """Trajectory of the truncated expansion at one point."""

    t: float
    alpha: float
    table: TermTable
    q: tuple[float, ...]  # Q_1..Q_J
    p: tuple[float, ...]  # P_1..P_J
    z_seq: tuple[float, ...]  # Z_{alpha,0}..Z_{alpha,J}

    @property
    def depth(self) -> int:
        return len(self.q)


def z_sequence(table: TermTable, alpha: float, k_max: int) -> ExpansionEval:
    """Z_{alpha,0} = Z_0, Z_{alpha,j} = Z_{alpha,j-1} - P_j up to j = k_max."""
    if k_max < 0:
        raise DomainError(f"z_sequence: k_max must be >= 0, got {k_max}")
    n = table.n[1:].astype(float)
    ratio = (n - 1.0) / n
    v = table.cos_terms[1:].copy()
    z = hardy.z_alpha(table, 0.0)
    qs: list[float] = []
    ps: list[float] = []
    zs: list[float] = [z]
    b = 1.0
    for j in range(1, k_max + 1):
        b *= (alpha - j + 1) / j
        v *= ratio
        q = float(v.sum())
        p = (-1.0) ** (j - 1) * b * q
        z = z - p
        qs.append(q)
        ps.append(p)
        zs.append(z)
    return ExpansionEval(
        t=table.t, alpha=alpha, table=table, q=tuple(qs), p=tuple(ps), z_seq=tuple(zs)
    )


# ---------------------------------------------------------------------------
# Measurement tools (reports, not assertions)
# ---------------------------------------------------------------------------

TableFactory = Callable[[float], TermTable]


def _default_factory(plan: WeightPlan) -> TableFactory:
    return lambda t: hardy.term_table(t, plan)


def _q_j_function(factory: TableFactory, j: int) -> Callable[[float], float]:
    return lambda t: q_k(factory(t), j)


def _fit_amplitude(ts: np.ndarray, qs: np.ndarray, cs: np.ndarray) -> float:
    """Least-squares a minimizing |q - a*c|^2 over the grid."""
    denom = float(np.dot(cs, cs))
    if denom == 0.0:
        return 0.0
    return float(np.dot(qs, cs)) / denom


def _cos_theta_zeros(t_lo: float, t_hi: float, step: float, tol: float) -> list[float]:
    f = lambda t: math.cos(specfun.theta(t).theta)
    brackets = roots.scan_sign_changes(f, t_lo, t_hi, step)
    return [roots.refine_root(f, br, tol) for br in brackets]


def qk_cos_drift(
    t_window: tuple[float, float],
    plan: WeightPlan,
    j_list: Sequence[int],
    step: float = 0.01,
    tol: float = 1e-9,
    table_factory: TableFactory | None = None,
) -> dict:
    """Offsets between zeros of Q_j and zeros of cos theta over a window.

    Also fits the amplitude of Q_j against cos theta on the scan grid.
    The window must cover at least five zeros of cos theta.
    """
    t_lo, t_hi = t_window
    factory = table_factory or _default_factory(plan)
    anchors = _cos_theta_zeros(t_lo, t_hi, step, tol)
    if len(anchors) < 5:
        raise DomainError(
            f"qk_cos_drift: window covers only {len(anchors)} zeros of cos theta"
        )
    grid = np.arange(t_lo, t_hi + 0.5 * step, step)
    cos_grid = np.array([math.cos(specfun.theta(t).theta) for t in grid])
    per_j = {}
    for j in j_list:
        f = _q_j_function(factory, j)
        q_grid = np.array([f(t) for t in grid])
        degenerate = bool(np.max(np.abs(q_grid)) < 1e-14)
        if degenerate:
            per_j[int(j)] = {
                "degenerate": True,
                "zeros": [],
                "offsets": [],
                "amplitude": 0.0,
            }
            continue
        brackets = roots.scan_sign_changes(f, t_lo, t_hi, step)
        zs = [roots.refine_root(f, br, tol) for br in brackets]
        offsets = [z - min(anchors, key=lambda a: abs(a - z)) for z in zs]
        per_j[int(j)] = {
            "degenerate": False,
            "zeros": zs,
            "offsets": offsets,
            "mean_abs_offset": float(np.mean(np.abs(offsets))) if offsets else None,
            "amplitude": _fit_amplitude(grid, q_grid, cos_grid),
        }
    return {
        "t_window": [t_lo, t_hi],
        "cos_theta_zeros": anchors,
        "plan": _plan_dict(plan),
        "per_j": per_j,
    }


def estimate_threshold_N(
    t_window: tuple[float, float],
    plan: WeightPlan,
    j_max: int,
    step: float = 0.01,
    tol: float = 1e-9,
    table_factory: TableFactory | None = None,
) -> int | None:
    """Smallest j from which the Q_j zero offsets shrink monotonically.

    Returns None when no such onset is observed up to j_max (a valid
    outcome; the underlying claim is qualitative).
    """
    if j_max < 1:
        return None
    report = qk_cos_drift(
        t_window, plan, list(range(1, j_max + 1)), step, tol, table_factory
    )
    means = []
    for j in range(1, j_max + 1):
        entry = report["per_j"][j]
        if entry["degenerate"] or not entry["offsets"]:
            means.append(0.0)
        else:
            means.append(entry["mean_abs_offset"])
    slack = 1e-12
    if all(m <= slack for m in means):
        return 1
    for j in range(1, j_max):
        tail = means[j - 1 :]
        if all(tail[i] >= tail[i + 1] - slack for i in range(len(tail) - 1)):
            return j
    return None


def _plan_dict(plan: WeightPlan) -> dict:
    return {
        "mode": plan.mode.value,
        "m": plan.m,
        "r": plan.r,
        "t_anchor": plan.t_anchor,
    }


def nesting_check(
    t_window: tuple[float, float],
    plan: WeightPlan,
    alpha: float,
    k_max: int,
    step: float = 0.005,
    tol: float = 1e-9,
    table_factory: TableFactory | None = None,
) -> dict:
    """Interval nesting of Z_{alpha,k} zero pairs inside Z_0 zero intervals.

    For every pair of consecutive Z_0 zeros, checks for k = 1..k_max that
    the zeros of Z_{alpha,k} inside the interval stay inside the previous
    iterate's zero interval.  Also records min|Z_{alpha,k-1}|/max|P_k| per
    interval, the measurable residue of the "Z_{alpha,k-1} >> P_k" step.
    Root-count mismatches are reported per interval, never raised.
    """
    t_lo, t_hi = t_window
    factory = table_factory or _default_factory(plan)

    def z_k(t: float, k: int) -> float:
        if k == 0:
            return hardy.z_alpha(factory(t), 0.0)
        return z_sequence(factory(t), alpha, k).z_seq[k]

    z0 = lambda t: z_k(t, 0)
    brackets = roots.scan_sign_changes(z0, t_lo, t_hi, step)
    base = [roots.refine_root(z0, br, tol) for br in brackets]
    if len(base) < 2:
        raise DomainError(
            f"nesting_check: window contains {len(base)} Z_0 zeros, need >= 2"
        )
    intervals = []
    nested_total = 0
    violated_total = 0
    mismatch_total = 0
    for a, b in zip(base, base[1:]):
        lo, hi = a, b
        per_k = []
        for k in range(1, k_max + 1):
            fk = lambda t: z_k(t, k)
            brs = roots.scan_sign_changes(fk, a, b, min(step, (b - a) / 50.0))
            zs = [roots.refine_root(fk, br, tol) for br in brs]
            grid = np.arange(a, b, (b - a) / 64.0)
            evals = [z_sequence(factory(t), alpha, k) for t in grid]
            prev_abs = [abs(e.z_seq[k - 1]) for e in evals]
            pk_abs = [abs(e.p[k - 1]) for e in evals]
            ratio = (
                min(prev_abs) / max(pk_abs) if max(pk_abs) > 0.0 else math.inf
            )
            entry = {
                "k": k,
                "zero_count": len(zs),
                "zeros": zs,
                "dominance_ratio": ratio,
            }
            if len(zs) != 2:
                entry["mismatch"] = True
                mismatch_total += 1
                per_k.append(entry)
                continue
            nested = zs[0] >= lo - tol and zs[1] <= hi + tol
            entry["nested"] = nested
            if nested:
                nested_total += 1
            else:
                violated_total += 1
            lo, hi = zs
            per_k.append(entry)
        intervals.append({"z0_left": a, "z0_right": b, "per_k": per_k})
    return {
        "t_window": [t_lo, t_hi],
        "alpha": alpha,
        "plan": _plan_dict(plan),
        "per_interval": intervals,
        "summary": {
            "intervals": len(intervals),
            "nested": nested_total,
            "violated": violated_total,
            "count_mismatches": mismatch_total,
        },
    }
