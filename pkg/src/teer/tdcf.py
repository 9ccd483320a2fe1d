"""Tandem detection cost function (t-DCF) and its link to the concurrent t-EER."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .curves import RateCurve
from .tandem import TandemPriors, TandemRates, tandem_fa_non, tandem_fa_spf, tandem_miss

__all__ = ["TdcfParams", "MinTdcf", "tdcf", "tdcf_grid", "min_tdcf", "tdcf_bounds_at_concurrent"]


@dataclass(frozen=True)
class TdcfParams:
    """Detection costs and asserted priors."""

    c_miss: float
    c_fa_non: float
    c_fa_spf: float
    asserted: TandemPriors

    def __post_init__(self):
        if min(self.c_miss, self.c_fa_non, self.c_fa_spf) <= 0:
            raise ValueError("detection costs must be strictly positive")

    @property
    def weights(self) -> tuple[float, float, float]:
        p = self.asserted
        return (self.c_miss * p.pi_tar, self.c_fa_non * p.pi_non, self.c_fa_spf * p.pi_spoof)


@dataclass(frozen=True)
class MinTdcf:
    value: float
    asv_index: int
    cm_index: int


def tdcf(params: TdcfParams, r: TandemRates) -> float:
    w_miss, w_non, w_spf = params.weights
    return w_miss * r.miss + w_non * r.fa_non + w_spf * r.fa_spf


def tdcf_grid(asv: RateCurve, cm: RateCurve, params: TdcfParams, i, j):
    """t-DCF at index pairs ``(i, j)``; broadcasts like numpy."""
    w_miss, w_non, w_spf = params.weights
    miss = tandem_miss(cm.miss[j], asv.miss[i])
    fa_non = tandem_fa_non(cm.miss[j], asv.fa["non"][i])
    fa_spf = tandem_fa_spf(cm.fa["spf"][j], asv.fa["spf"][i])
    return w_miss * miss + w_non * fa_non + w_spf * fa_spf


def _lower_hull(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Indices of the lower convex hull of points (u, v), monotone chain."""
    order = np.lexsort((v, u))
    hull: list[int] = []
    for k in order:
        while len(hull) >= 2:
            a, b = hull[-2], hull[-1]
            cross = (u[b] - u[a]) * (v[k] - v[a]) - (v[b] - v[a]) * (u[k] - u[a])
            if cross <= 0:
                hull.pop()
            else:
                break
        hull.append(int(k))
    return np.array(hull, dtype=np.int64)


def min_tdcf(asv: RateCurve, cm: RateCurve, params: TdcfParams,
             fixed_asv_index: Optional[int] = None, chunk: int = 4096) -> MinTdcf:
    """Minimum t-DCF over all pairs of operating points.

    With ``fixed_asv_index`` only the CM threshold is searched. Ties go to
    the smallest ASV index, then the smallest CM index.

    For fixed CM index the cost is ``const + (1 - miss_cm) * u(i) +
    fa_cm * v(i)`` with nonnegative weights, so its minimum over ``i`` lies
    on the lower convex hull of the points ``(u(i), v(i))``. Only hull
    vertices are scanned against every CM index; the winning CM indices are
    then rescanned over every ASV index to settle ties exactly.
    """
    j_all = np.arange(cm.n_points)
    if fixed_asv_index is not None:
        vals = tdcf_grid(asv, cm, params, fixed_asv_index, j_all)
        j = int(np.argmin(vals))
        return MinTdcf(float(vals[j]), int(fixed_asv_index), j)

    w_miss, w_non, w_spf = params.weights
    u = w_miss * asv.miss + w_non * asv.fa["non"]
    v = w_spf * asv.fa["spf"]
    hull = _lower_hull(u, v)

    best_per_j = np.full(cm.n_points, np.inf)
    for start in range(0, cm.n_points, chunk):
        jj = j_all[start: start + chunk]
        vals = tdcf_grid(asv, cm, params, hull[:, None], jj[None, :])
        best_per_j[start: start + chunk] = vals.min(axis=0)

    # a non-hull point can tie a hull vertex up to rounding; allow for it
    best = best_per_j.min()
    tol = 8 * np.finfo(float).eps * max(1.0, abs(best))
    i_all = np.arange(asv.n_points)
    winner = None
    for j in np.flatnonzero(best_per_j <= best + tol):
        vals = tdcf_grid(asv, cm, params, i_all, int(j))
        i = int(np.argmin(vals))
        cand = (float(vals[i]), i, int(j))
        if winner is None or cand[0] < winner[0] or (cand[0] == winner[0] and cand[1] < winner[1]):
            winner = cand
    return MinTdcf(*winner)


def tdcf_bounds_at_concurrent(params: TdcfParams, p_e_cross: float) -> tuple[float, float, float]:
    """t-DCF at the concurrent point with its cost-range sandwich.

    Returns ``(lo, hi, value)`` with ``lo = min(costs) * p`` and
    ``hi = max(costs) * p``.
    """
    costs = (params.c_miss, params.c_fa_non, params.c_fa_spf)
    value = p_e_cross * sum(params.weights)
    lo, hi = min(costs) * p_e_cross, max(costs) * p_e_cross
    # asserted priors may miss 1 by up to 1e-12
    slack = 1e-9 * max(costs) * abs(p_e_cross)
    assert lo - slack <= value <= hi + slack, (lo, value, hi)
    return lo, hi, value
