"""Bracketing scans, refinement and Gram points of three kinds.

Scans assume simple sign-change zeros; tangencies (even zeros) are
invisible to sign scans and are hunted separately via |f| minima in
detect_even_zero.  Functions scanned over a window must be continuous in
t, so plan-based evaluators freeze the exact-Cesaro/cutoff plan at the
window midpoint; sigmoid plans are smooth in t and track t directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import hardy, specfun
from .errors import BracketError, DomainError
from .hardy import Perturbation
from .weights import WeightMode, WeightPlan

_MAX_REFINE_ITERS = 200

GRAM_T_FLOOR = 10.0  # theta is monotone from here on


def default_step(t_hi: float) -> float:
    """0.01 below t = 1000, 0.005 above (zero density grows like log t)."""
    return 0.005 if t_hi >= 1000.0 else 0.01


def scan_sign_changes(
    f: Callable[[float], float], t_lo: float, t_hi: float, step: float
) -> list[tuple[float, float]]:
    """All brackets [a, b] with f(a) f(b) < 0 at the scan resolution.

    An exact zero at a grid point yields the degenerate bracket (a, a).
    Double zeros between grid points are missed by design.
    """
    if not t_lo < t_hi:
        raise DomainError(f"scan_sign_changes: need t_lo < t_hi, got [{t_lo}, {t_hi}]")
    if step <= 0.0:
        raise DomainError(f"scan_sign_changes: step must be > 0, got {step}")
    count = int(math.floor((t_hi - t_lo) / step)) + 1
    ts = [t_lo + i * step for i in range(count)]
    if ts[-1] < t_hi:
        ts.append(t_hi)
    brackets: list[tuple[float, float]] = []
    prev_t = ts[0]
    prev_v = f(prev_t)
    for t in ts[1:]:
        v = f(t)
        if prev_v == 0.0:
            brackets.append((prev_t, prev_t))
        elif v != 0.0 and (prev_v < 0.0) != (v < 0.0):
            brackets.append((prev_t, t))
        prev_t, prev_v = t, v
    if prev_v == 0.0:
        brackets.append((prev_t, prev_t))
    return brackets


def refine_root(
    f: Callable[[float], float], bracket: tuple[float, float], tol: float = 1e-10
) -> float:
    """Root inside a sign-change bracket, bisection with secant steps."""
    a, b = bracket
    if a == b:
        return a
    fa = f(a)
    if fa == 0.0:
        return a
    fb = f(b)
    if fb == 0.0:
        return b
    if (fa < 0.0) == (fb < 0.0):
        raise BracketError(f"refine_root: no sign change on [{a}, {b}]")
    for it in range(_MAX_REFINE_ITERS):
        if b - a <= 2.0 * tol:
            break
        if it % 2 == 0:
            # Secant candidate, accepted only if it lands safely inside;
            # every other iteration bisects, guaranteeing convergence.
            denom = fb - fa
            x = a - fa * (b - a) / denom if denom != 0.0 else 0.5 * (a + b)
            width = b - a
            if not (a + 1e-3 * width < x < b - 1e-3 * width):
                x = 0.5 * (a + b)
        else:
            x = 0.5 * (a + b)
        fx = f(x)
        if fx == 0.0:
            return x
        if (fx < 0.0) == (fa < 0.0):
            a, fa = x, fx
        else:
            b, fb = x, fx
    return 0.5 * (a + b)


# ---------------------------------------------------------------------------
# Window-frozen evaluators for plan-based functions
# ---------------------------------------------------------------------------


def frozen_plan(mode: WeightMode, t_lo: float, t_hi: float) -> WeightPlan | None:
    """Plan for scanning [t_lo, t_hi]: midpoint-frozen, or None for sigmoid.

    Sigmoid weights are smooth in t, so the scanned function stays
    continuous with a per-point anchor; freezing is only needed for the
    integer-jump modes.
    """
    if mode is WeightMode.SIGMOID:
        return None
    return hardy.plan_for(0.5 * (t_lo + t_hi), mode)


def table_factory_for(
    mode: WeightMode,
    t_lo: float,
    t_hi: float,
    perturbation: Perturbation | None = None,
) -> Callable[[float], hardy.TermTable]:
    plan = frozen_plan(mode, t_lo, t_hi)
    if plan is None:
        return lambda t: hardy.term_table(
            t, WeightPlan.sigmoid_for(t), perturbation
        )
    return lambda t: hardy.term_table(t, plan, perturbation)


def z_alpha_function(
    alpha: float,
    mode: WeightMode,
    t_lo: float,
    t_hi: float,
    perturbation: Perturbation | None = None,
) -> Callable[[float], float]:
    factory = table_factory_for(mode, t_lo, t_hi, perturbation)
    return lambda t: hardy.z_alpha(factory(t), alpha)


def z_oracle_function(alpha: float) -> Callable[[float], float]:
    return lambda t: hardy.z_alpha_oracle(t, alpha)[0]


def cos_theta(t: float) -> float:
    return math.cos(specfun.theta(t).theta)


@dataclass(frozen=True)
class ZeroList:
    """Ordered, refined zeros of one labelled function on an interval."""

    label: str
    t_lo: float
    t_hi: float
    zeros: tuple[float, ...]
    refine_tol: float
    step: float
    tangencies: tuple[float, ...] = field(default=())

    def to_dict(self) -> dict:
        return {
            "schema": "hardylab.zerolist.v1",
            "label": self.label,
            "interval": [self.t_lo, self.t_hi],
            "zeros": list(self.zeros),
            "tol": self.refine_tol,
            "step": self.step,
            "tangencies": list(self.tangencies),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ZeroList":
        return cls(
            label=d["label"],
            t_lo=d["interval"][0],
            t_hi=d["interval"][1],
            zeros=tuple(d["zeros"]),
            refine_tol=d["tol"],
            step=d.get("step", 0.0),
            tangencies=tuple(d.get("tangencies", ())),
        )


def zeros_of(
    f: Callable[[float], float],
    label: str,
    t_lo: float,
    t_hi: float,
    step: float | None = None,
    tol: float = 1e-10,
) -> ZeroList:
    """Scan + refine composition; deterministic for identical inputs."""
    if step is None:
        step = default_step(t_hi)
    brackets = scan_sign_changes(f, t_lo, t_hi, step)
    zs = tuple(refine_root(f, br, tol) for br in brackets)
    return ZeroList(
        label=label, t_lo=t_lo, t_hi=t_hi, zeros=zs, refine_tol=tol, step=step
    )


# ---------------------------------------------------------------------------
# Gram points
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GramPoint:
    kind: int  # 1, 2 or 3
    index: int
    t: float


def _solve_theta_equals(target: float, tol: float = 1e-12) -> float:
    """Invert theta on [10, inf) by safeguarded Newton."""
    if target < specfun.theta(GRAM_T_FLOOR).theta:
        raise DomainError(
            f"gram point with theta = {target:.6g} lies below t = {GRAM_T_FLOOR}"
        )
    t = max(2.0 * GRAM_T_FLOOR, 20.0)
    lo, hi = GRAM_T_FLOOR, 1e7
    for _ in range(100):
        ev = specfun.theta(t)
        err = ev.theta - target
        if abs(err) < tol * max(1.0, abs(target)):
            return t
        if err > 0.0:
            hi = min(hi, t)
        else:
            lo = max(lo, t)
        t_new = t - err / ev.theta_prime
        t = t_new if lo < t_new < hi else 0.5 * (lo + hi)
    return t


def gram_points(
    kind: int,
    n_from: int,
    count: int,
    plan: WeightPlan | None = None,
    mode: WeightMode = WeightMode.SIGMOID,
    step: float | None = None,
    tol: float = 1e-10,
) -> list[GramPoint]:
    """Consecutive Gram points, indexed by the (n-1) convention.

    First kind: theta(t) = (n-1) pi.  Second kind: theta(t) = (n-1) pi/2.
    Third kind: zeros of Z_0 under the given plan/mode, scanned inside a
    window anchored at the matching first-kind points.
    """
    if count < 1:
        raise DomainError(f"gram_points: count must be >= 1, got {count}")
    if kind in (1, 2):
        spacing = math.pi if kind == 1 else 0.5 * math.pi
        out = []
        for i in range(count):
            n = n_from + i
            t = _solve_theta_equals((n - 1) * spacing)
            out.append(GramPoint(kind=kind, index=n, t=t))
        return out
    if kind != 3:
        raise DomainError(f"gram_points: kind must be 1, 2 or 3, got {kind}")
    # Third kind: window from first-kind anchors, one mean spacing of pad.
    t_start = _solve_theta_equals((n_from - 1) * math.pi)
    t_end = _solve_theta_equals((n_from + count - 1) * math.pi)
    pad = math.pi / specfun.theta(t_start).theta_prime
    t_lo, t_hi = max(GRAM_T_FLOOR, t_start - pad), t_end + pad
    if plan is not None:
        f = lambda t: hardy.z_alpha(hardy.term_table(t, plan), 0.0)
    else:
        f = z_alpha_function(0.0, mode, t_lo, t_hi)
    zl = zeros_of(f, "z0", t_lo, t_hi, step, tol)
    return [
        GramPoint(kind=3, index=n_from + i, t=z)
        for i, z in enumerate(zl.zeros[:count])
    ]


# ---------------------------------------------------------------------------
# Tangency (even-zero) detection
# ---------------------------------------------------------------------------


def detect_even_zero(
    f: Callable[[float], float],
    t_lo: float,
    t_hi: float,
    step: float | None = None,
    eps: float = 1e-6,
) -> list[tuple[float, float]]:
    """Tangency candidates: |f| locally small with no sign change.

    Grid minima of |f| are refined by parabolic interpolation on f; a
    candidate qualifies when |f| < eps at the refined point and f keeps
    one sign across the surrounding grid cell.
    """
    if eps <= 0.0:
        raise DomainError(f"detect_even_zero: eps must be > 0, got {eps}")
    if step is None:
        step = default_step(t_hi)
    count = int(math.floor((t_hi - t_lo) / step)) + 1
    ts = np.array([t_lo + i * step for i in range(count)])
    vs = np.array([f(t) for t in ts])
    out: list[tuple[float, float]] = []
    for i in range(1, len(ts) - 1):
        trio = vs[i - 1 : i + 2]
        if not (abs(vs[i]) <= abs(vs[i - 1]) and abs(vs[i]) <= abs(vs[i + 1])):
            continue
        if (trio < 0.0).any() and (trio > 0.0).any():
            continue  # sign change: ordinary zero, not a tangency
        t_c, f_c = _refine_extremum(f, ts[i - 1], ts[i], ts[i + 1])
        sign_ok = f(t_c - step) * f(t_c + step) > 0.0
        if abs(f_c) < eps and sign_ok:
            out.append((t_c, f_c))
    return out


def _refine_extremum(
    f: Callable[[float], float], a: float, b: float, c: float, iters: int = 40
) -> tuple[float, float]:
    """Parabolic refinement of an interior extremum of f on (a, c)."""
    fa, fb, fc = f(a), f(b), f(c)
    for _ in range(iters):
        denom = (fa - fb) * (c - b) + (fc - fb) * (b - a)
        if denom == 0.0:
            break
        x = b + 0.5 * (
            (fa - fb) * (c - b) * (c - b) - (fc - fb) * (b - a) * (b - a)
        ) / denom
        if not a < x < c or abs(x - b) < 1e-14:
            break
        fx = f(x)
        # Keep the three points bracketing the extremum of f.
        if x < b:
            if abs(fx) < abs(fb):
                c, fc, b, fb = b, fb, x, fx
            else:
                a, fa = x, fx
        else:
            if abs(fx) < abs(fb):
                a, fa, b, fb = b, fb, x, fx
            else:
                c, fc = x, fx
    return b, fb


# ---------------------------------------------------------------------------
# Critical-pair simulation: phase perturbation + alpha sweep
# ---------------------------------------------------------------------------


def _weakest_extremum(
    f: Callable[[float], float], t_lo: float, t_hi: float, step: float
) -> tuple[float, float]:
    """Interior extremum of f with the smallest |value| on the window."""
    count = int(math.floor((t_hi - t_lo) / step)) + 1
    ts = [t_lo + i * step for i in range(count)]
    vs = [f(t) for t in ts]
    best: tuple[float, float] | None = None
    for i in range(1, len(ts) - 1):
        if (vs[i] - vs[i - 1]) * (vs[i + 1] - vs[i]) <= 0.0:
            t_c, f_c = _refine_extremum(f, ts[i - 1], ts[i], ts[i + 1])
            if best is None or abs(f_c) < abs(best[1]):
                best = (t_c, f_c)
    if best is None:
        raise DomainError("simulate: no interior extremum in the window")
    return best


def simulate_critical_pair(
    t_lo: float,
    t_hi: float,
    n0: int,
    phi: float,
    alpha_lo: float,
    alpha_hi: float,
    mode: WeightMode = WeightMode.SIGMOID,
    step: float = 0.002,
    eps: float = 1e-6,
    alpha_steps: int = 16,
) -> dict:
    """Sweep alpha for a phase-perturbed Z_alpha until a zero pair merges.

    Tracks the weakest local extremum of the perturbed function; a sign
    change of its value along the sweep marks a pair creation/annihilation,
    and bisection on alpha pins the tangency.  The same detection is rerun
    with phi = 0 to confirm the tangency is an artifact of the phase shift.
    """
    pert = Perturbation(n0, phi)

    def extremum(alpha: float, p: Perturbation | None) -> tuple[float, float]:
        f = z_alpha_function(alpha, mode, t_lo, t_hi, p)
        return _weakest_extremum(f, t_lo, t_hi, step)

    sweep = []
    alphas = [
        alpha_lo + i * (alpha_hi - alpha_lo) / alpha_steps
        for i in range(alpha_steps + 1)
    ]
    for a in alphas:
        t_e, v_e = extremum(a, pert)
        sweep.append({"alpha": a, "t": t_e, "value": v_e})
    crossing = None
    for lo, hi in zip(sweep, sweep[1:]):
        if lo["value"] * hi["value"] < 0.0:
            crossing = (lo["alpha"], hi["alpha"], lo["value"])
            break
    report: dict = {
        "schema": "hardylab.simulate.v1",
        "t_window": [t_lo, t_hi],
        "perturbation": {"n0": n0, "phi": phi},
        "alpha_range": [alpha_lo, alpha_hi],
        "sweep": sweep,
        "tangency": None,
        "alpha_star": None,
    }
    if crossing is None:
        return report
    a_lo, a_hi, v_lo = crossing
    quiet_alpha = a_lo  # side where the extremum has not yet crossed zero
    for _ in range(80):
        a_mid = 0.5 * (a_lo + a_hi)
        _, v_mid = extremum(a_mid, pert)
        if (v_mid < 0.0) == (v_lo < 0.0):
            a_lo, v_lo = a_mid, v_mid
            quiet_alpha = a_mid
        else:
            a_hi = a_mid
        if abs(v_mid) < 0.1 * eps:
            quiet_alpha = a_mid
            break
    f_star = z_alpha_function(quiet_alpha, mode, t_lo, t_hi, pert)
    hits = detect_even_zero(f_star, t_lo, t_hi, step, eps)
    f_plain = z_alpha_function(quiet_alpha, mode, t_lo, t_hi, None)
    hits_plain = detect_even_zero(f_plain, t_lo, t_hi, step, eps)
    report["alpha_star"] = quiet_alpha
    report["tangency"] = [{"t": t, "value": v} for t, v in hits]
    report["unperturbed_hits"] = [{"t": t, "value": v} for t, v in hits_plain]
    return report
