"""Zero-pair classification, Lehmer candidates and spacing statistics.

A pair of consecutive Z_alpha zeros is classified by the signs of the
shifts s_i = delta_alpha,i - delta_0,i against the matching Z_0 zeros:
toward each other (Lehmer), apart (Gordon), both right, both left, or
degenerate when a shift vanishes within the refine tolerance.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import binom, hardy, roots, specfun
from .errors import DomainError, LengthMismatchError
from .roots import ZeroList
from .weights import WeightPlan


class PairClass(str, enum.Enum):
    LEHMER = "lehmer"
    GORDON = "gordon"
    RIGHT = "right"
    LEFT = "left"
    DEGENERATE = "degenerate"


@dataclass(frozen=True)
class PairRecord:
    i: int
    z0_left: float
    z0_right: float
    za_left: float
    za_right: float
    shift_left: float
    shift_right: float
    pair_class: PairClass
    gap: float


def classify_pairs(
    zeros_alpha: ZeroList, zeros_zero: ZeroList, tol: float | None = None
) -> list[PairRecord]:
    """One record per consecutive zero pair, classified by shift signs."""
    if len(zeros_alpha.zeros) != len(zeros_zero.zeros):
        raise LengthMismatchError(
            "classify_pairs: zero counts differ "
            f"({len(zeros_alpha.zeros)} vs {len(zeros_zero.zeros)}) on "
            f"[{zeros_zero.t_lo}, {zeros_zero.t_hi}]"
        )
    if tol is None:
        tol = max(zeros_alpha.refine_tol, zeros_zero.refine_tol)
    za = zeros_alpha.zeros
    z0 = zeros_zero.zeros
    records = []
    for i in range(len(za) - 1):
        s_l = za[i] - z0[i]
        s_r = za[i + 1] - z0[i + 1]
        if abs(s_l) <= tol or abs(s_r) <= tol:
            cls = PairClass.DEGENERATE
        elif s_l > 0.0 and s_r < 0.0:
            cls = PairClass.LEHMER
        elif s_l < 0.0 and s_r > 0.0:
            cls = PairClass.GORDON
        elif s_l > 0.0 and s_r > 0.0:
            cls = PairClass.RIGHT
        else:
            cls = PairClass.LEFT
        records.append(
            PairRecord(
                i=i,
                z0_left=z0[i],
                z0_right=z0[i + 1],
                za_left=za[i],
                za_right=za[i + 1],
                shift_left=s_l,
                shift_right=s_r,
                pair_class=cls,
                gap=za[i + 1] - za[i],
            )
        )
    return records


def lehmer_candidates_z0(
    t_window: tuple[float, float],
    plan: WeightPlan,
    j_max: int,
    n_threshold: int | None = None,
    step: float = 0.01,
    tol: float = 1e-9,
    table_factory: binom.TableFactory | None = None,
) -> list[dict]:
    """Consecutive Z_0 zero intervals passing the Q_j sign condition.

    An interval qualifies when every Q_j at both endpoints, for j below
    the threshold (n_threshold or j_max), shares the sign of Z_0 inside
    the interval.  Returns the qualifying intervals with their per-j sign
    tables attached.
    """
    t_lo, t_hi = t_window
    factory = table_factory or (lambda t: hardy.term_table(t, plan))
    z0 = lambda t: hardy.z_alpha(factory(t), 0.0)
    brackets = roots.scan_sign_changes(z0, t_lo, t_hi, step)
    zeros = [roots.refine_root(z0, br, tol) for br in brackets]
    if len(zeros) < 2:
        raise DomainError(
            f"lehmer_candidates_z0: window has {len(zeros)} Z_0 zeros, need >= 2"
        )
    limit = n_threshold if n_threshold is not None else j_max
    out = []
    for a, b in zip(zeros, zeros[1:]):
        mid_sign = 1.0 if z0(0.5 * (a + b)) > 0.0 else -1.0
        table_a = factory(a)
        table_b = factory(b)
        sign_table = []
        ok = True
        for j in range(1, max(1, limit)):
            qa = binom.q_k(table_a, j)
            qb = binom.q_k(table_b, j)
            match = qa * mid_sign > 0.0 and qb * mid_sign > 0.0
            sign_table.append({"j": j, "q_left": qa, "q_right": qb, "match": match})
            if not match:
                ok = False
                break
        if ok and sign_table:
            out.append(
                {
                    "t_left": a,
                    "t_right": b,
                    "z0_sign": mid_sign,
                    "threshold": limit,
                    "sign_table": sign_table,
                }
            )
    return out


@dataclass(frozen=True)
class SpacingReport:
    normalized_gaps: tuple[float, ...]  # consecutive spacings, unit mean density
    bin_edges: tuple[float, ...]
    counts: tuple[int, ...]  # pairwise unfolded distances per bin
    gue_reference: tuple[float, ...]  # 1 - (sin pi u / pi u)^2 at bin centers
    min_gap: tuple[float, float, float]  # (t_left, t_right, gap)

    def to_dict(self) -> dict:
        return {
            "schema": "hardylab.spacing.v1",
            "normalized_gaps": list(self.normalized_gaps),
            "bin_edges": list(self.bin_edges),
            "counts": list(self.counts),
            "gue_reference": list(self.gue_reference),
            "min_gap": {
                "t_left": self.min_gap[0],
                "t_right": self.min_gap[1],
                "gap": self.min_gap[2],
            },
        }


def gue_pair_correlation(u: float) -> float:
    """1 - (sin pi u / pi u)^2, with the u = 0 limit filled in."""
    if u == 0.0:
        return 0.0
    s = math.sin(math.pi * u) / (math.pi * u)
    return 1.0 - s * s


def gap_statistics(
    zeros: ZeroList,
    bin_width: float = 0.1,
    u_max: float = 3.0,
    density: Callable[[float], float] | None = None,
) -> SpacingReport:
    """Normalized spacings and the pair-correlation histogram vs GUE.

    The local density is theta'(t)/pi (mean spacing pi/theta'), overridable
    for synthetic data.  The histogram collects all pairwise unfolded
    distances in (0, u_max]; min_gap highlights the closest consecutive
    pair in raw t units.
    """
    zs = zeros.zeros
    if len(zs) < 20:
        raise DomainError(f"gap_statistics: need >= 20 zeros, got {len(zs)}")
    if density is None:
        density = lambda t: specfun.theta(t).theta_prime / math.pi
    dens = np.array([density(t) for t in zs])
    gaps = np.diff(zs)
    normalized = gaps * dens[:-1]
    # Unfolded positions: cumulative normalized spacings.
    x = np.concatenate([[0.0], np.cumsum(normalized)])
    pair_dists = []
    for i in range(len(x)):
        for j in range(i + 1, len(x)):
            u = x[j] - x[i]
            if u > u_max:
                break
            pair_dists.append(u)
    edges = np.arange(0.0, u_max + 0.5 * bin_width, bin_width)
    counts, _ = np.histogram(pair_dists, bins=edges)
    centers = 0.5 * (edges[:-1] + edges[1:])
    gue = [gue_pair_correlation(u) for u in centers]
    k = int(np.argmin(gaps))
    return SpacingReport(
        normalized_gaps=tuple(float(g) for g in normalized),
        bin_edges=tuple(float(e) for e in edges),
        counts=tuple(int(c) for c in counts),
        gue_reference=tuple(gue),
        min_gap=(float(zs[k]), float(zs[k + 1]), float(gaps[k])),
    )
