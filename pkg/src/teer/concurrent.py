"""Concurrent t-EER: the operating point shared by every t-EER path.

At that point the tandem miss, nontarget false-alarm and spoof false-alarm
rates coincide, so the t-EER there does not depend on the spoof
prevalence. It is located by walking one path and finding where

    fa_non_asv(i) * (1 - miss_cm(j)) - fa_cm(j) * fa_spf_asv(i)

changes sign. The product form avoids dividing by a zero spoof
false-alarm rate.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .curves import RateCurve
from .path import TeerPath, build_teer_path, path_rates
from .tandem import check_rho, tandem_rates_at

__all__ = [
    "ConcurrentPoint",
    "IntersectionReport",
    "xpoint_residual",
    "local_grid_step",
    "concurrent_teer",
    "concurrent_from_path",
    "verify_intersection",
]

log = logging.getLogger(__name__)


def xpoint_residual(asv: RateCurve, cm: RateCurve, i, j):
    return asv.fa["non"][i] * (1.0 - cm.miss[j]) - cm.fa["spf"][j] * asv.fa["spf"][i]


def local_grid_step(asv: RateCurve, cm: RateCurve, i: int, j: int) -> float:
    """Largest change of any subsystem rate between neighbours of ``(i, j)``."""
    steps = [0.0]
    for curve, k in ((asv, i), (cm, j)):
        lo, hi = max(k - 1, 0), min(k + 1, curve.last)
        for arr in (curve.miss, *curve.fa.values()):
            seg = arr[lo: hi + 1]
            if seg.size > 1:
                steps.append(float(np.max(np.abs(np.diff(seg)))))
    return max(steps)


@dataclass(frozen=True)
class ConcurrentPoint:
    """Located path intersection with diagnostics.

    ``rate_spread`` is max - min of the three tandem rates at the point and
    bounds how far the discrete point is from exact three-way equality.
    ``warning`` is set when no sign change was found along the path.
    """

    asv_index: int
    cm_index: int
    asv_threshold: float
    cm_threshold: float
    teer: float
    xpoint_residual: float
    rate_spread: float
    miss: float
    fa_non: float
    fa_spf: float
    grid_step: float
    rho: float
    n_sign_changes: int
    warning: bool

    def to_json(self) -> dict:
        return {
            "concurrent_teer": self.teer,
            "tau_asv": self.asv_threshold,
            "tau_cm": self.cm_threshold,
            "rate_spread": self.rate_spread,
            "warning": self.warning,
        }


def concurrent_from_path(path: TeerPath) -> ConcurrentPoint:
    """Locate the intersection point along an already built path."""
    asv, cm = path.asv, path.cm
    i, j = path.asv_index, path.cm_index
    x = xpoint_residual(asv, cm, i, j)

    candidates = np.flatnonzero(~((i == 0) & (j == 0)))
    changes = []
    if candidates.size:
        xc = x[candidates]
        sign = np.sign(xc)
        for k in np.flatnonzero(sign == 0):
            changes.append(candidates[k])
        for k in np.flatnonzero(sign[:-1] * sign[1:] < 0):
            a, b = candidates[k], candidates[k + 1]
            changes.append(a if abs(x[a]) <= abs(x[b]) else b)

    warning = not changes
    if changes:
        pool = np.array(sorted(set(changes)))
    elif candidates.size:
        pool = candidates
    else:
        pool = np.array([0])
    best = int(pool[np.argmin(np.abs(x[pool]))])  # first = smallest asv index on ties
    if warning:
        log.warning("no sign change of the intersection residual along the rho=%g path", path.rho)

    bi, bj = int(i[best]), int(j[best])
    rates = tandem_rates_at(asv, cm, bi, bj).as_tuple()
    return ConcurrentPoint(
        asv_index=bi,
        cm_index=bj,
        asv_threshold=asv.threshold_at(bi),
        cm_threshold=cm.threshold_at(bj),
        teer=float(np.mean(rates)),
        xpoint_residual=float(x[best]),
        rate_spread=float(max(rates) - min(rates)),
        miss=rates[0],
        fa_non=rates[1],
        fa_spf=rates[2],
        grid_step=local_grid_step(asv, cm, bi, bj),
        rho=path.rho,
        n_sign_changes=len(set(changes)),
        warning=warning,
    )


def concurrent_teer(asv: RateCurve, cm: RateCurve, rho: float = 0.0) -> ConcurrentPoint:
    """Concurrent t-EER searched along the path for ``rho`` (default 0).

    Any ``rho`` gives the same point up to discretisation.
    """
    return concurrent_from_path(build_teer_path(asv, cm, rho))


@dataclass(frozen=True)
class IntersectionReport:
    point: ConcurrentPoint
    rows: list[tuple[float, float]]

    @property
    def max_deviation(self) -> float:
        return max(d for _, d in self.rows)


def verify_intersection(asv: RateCurve, cm: RateCurve, rhos, point: ConcurrentPoint | None = None
                        ) -> IntersectionReport:
    """|tandem miss - tandem fa_rho| at the concurrent point, for each rho."""
    if point is None:
        point = concurrent_teer(asv, cm)
    rows = []
    for rho in rhos:
        rho = check_rho(rho)
        miss, fa = path_rates(asv, cm, rho, point.asv_index, point.cm_index)
        rows.append((rho, float(abs(miss - fa))))
    return IntersectionReport(point, rows)
