"""Discrete t-EER paths.

For a spoof prevalence ``rho`` the path pairs every feasible ASV operating
point ``i`` with the CM operating point ``j`` at which the tandem miss rate
and the rho-weighted tandem false-alarm rate are closest. Only one CM index
is stored per ASV index, so memory is linear in the number of scores.

For fixed ``i`` the residual ``miss - fa`` is non-decreasing in ``j``, so
``j`` is found by bisection. The search runs for all ``i`` at once.
"""

from __future__ import annotations

import io
from dataclasses import dataclass

import numpy as np

from .curves import RateCurve, format_threshold
from .tandem import check_rho, tandem_fa_non, tandem_fa_spf, tandem_fa_total, tandem_miss

__all__ = [
    "TeerPath",
    "asv_feasible",
    "cm_feasible",
    "asv_feasible_mask",
    "cm_feasible_mask",
    "path_rates",
    "path_residual",
    "build_teer_path",
    "teer_along_path",
    "path_to_csv",
    "PATH_CSV_HEADER",
]

PATH_CSV_HEADER = "rho,asv_threshold,cm_threshold,teer,residual"


def _require_asv_classes(asv: RateCurve) -> None:
    missing = {"non", "spf"} - set(asv.fa)
    if missing:
        raise ValueError(f"ASV curve lacks false-alarm classes {sorted(missing)}")


def asv_feasible_mask(asv: RateCurve, rho: float) -> np.ndarray:
    """Mask of ASV operating points at which a t-EER exists for some CM threshold."""
    _require_asv_classes(asv)
    rho = check_rho(rho)
    return tandem_fa_total(rho, asv.fa["non"], asv.fa["spf"]) >= asv.miss


def cm_feasible_mask(cm: RateCurve, rho: float) -> np.ndarray:
    """Mask of CM operating points at which a t-EER exists for some ASV threshold."""
    rho = check_rho(rho)
    return 1.0 - rho + rho * cm.fa["spf"] >= (2.0 - rho) * cm.miss


def asv_feasible(asv: RateCurve, rho: float, i: int) -> bool:
    return bool(asv_feasible_mask(asv, rho)[i])


def cm_feasible(cm: RateCurve, rho: float, j: int) -> bool:
    return bool(cm_feasible_mask(cm, rho)[j])


def _last_true(mask: np.ndarray) -> int:
    idx = np.flatnonzero(mask)
    return int(idx[-1]) if idx.size else -1


def path_rates(asv: RateCurve, cm: RateCurve, rho: float, i, j):
    """Tandem miss and rho-weighted false alarm at index pairs ``(i, j)``."""
    miss = tandem_miss(cm.miss[j], asv.miss[i])
    fa = tandem_fa_total(
        rho,
        tandem_fa_non(cm.miss[j], asv.fa["non"][i]),
        tandem_fa_spf(cm.fa["spf"][j], asv.fa["spf"][i]),
    )
    return miss, fa


def path_residual(asv: RateCurve, cm: RateCurve, rho: float, i, j):
    miss, fa = path_rates(asv, cm, rho, i, j)
    return miss - fa


def _first_at_least(asv, cm, rho, i, target) -> np.ndarray:
    """Smallest j with residual(i, j) >= target, per i (vectorised bisection).

    Returns ``cm.n_points`` where no such j exists.
    """
    lo = np.zeros(i.shape, dtype=np.int64)
    hi = np.full(i.shape, cm.n_points, dtype=np.int64)
    active = lo < hi
    while active.any():
        a = np.flatnonzero(active)
        mid = (lo[a] + hi[a]) // 2
        ok = path_residual(asv, cm, rho, i[a], mid) >= target[a]
        hi[a] = np.where(ok, mid, hi[a])
        lo[a] = np.where(ok, lo[a], mid + 1)
        active = lo < hi
    return lo


@dataclass(frozen=True, eq=False)
class TeerPath:
    """One t-EER path, one entry per feasible ASV operating point.

    ``plateau`` counts the CM indices sharing the chosen residual value; a
    value above 1 means the choice of ``cm_index`` was a tie resolved
    towards the smallest index.
    """

    rho: float
    asv_index: np.ndarray
    cm_index: np.ndarray
    teer: np.ndarray
    residual: np.ndarray
    plateau: np.ndarray
    asv_critical_index: int
    cm_critical_index: int
    asv: RateCurve
    cm: RateCurve

    def __len__(self) -> int:
        return int(self.asv_index.size)

    @property
    def entries(self) -> list[tuple[int, int, float, float]]:
        return [(int(i), int(j), float(t), float(r)) for i, j, t, r in
                zip(self.asv_index, self.cm_index, self.teer, self.residual)]

    def asv_thresholds(self) -> np.ndarray:
        return np.array([self.asv.threshold_at(int(i)) for i in self.asv_index])

    def cm_thresholds(self) -> np.ndarray:
        return np.array([self.cm.threshold_at(int(j)) for j in self.cm_index])


def build_teer_path(asv: RateCurve, cm: RateCurve, rho: float) -> TeerPath:
    """Construct the discrete t-EER path for spoof prevalence ``rho``.

    For every feasible ASV index the CM index minimising
    ``|miss - fa_rho|`` is selected, smallest index on ties.
    """
    rho = check_rho(rho)
    _require_asv_classes(asv)
    if "spf" not in cm.fa:
        raise ValueError("CM curve lacks the spoof false-alarm class")

    feasible = asv_feasible_mask(asv, rho)
    n_feasible = _last_true(feasible) + 1
    if n_feasible == 0 or not feasible[:n_feasible].all():
        raise ValueError("ASV feasible set is not a prefix; curve is not monotone")
    i = np.arange(n_feasible, dtype=np.int64)

    j0 = _first_at_least(asv, cm, rho, i, np.zeros(n_feasible))
    # j0 == n_points only when the CM curve is cut short (e.g. accept-all)
    has_pos = j0 < cm.n_points
    r_pos = np.full(n_feasible, np.inf)
    r_pos[has_pos] = path_residual(asv, cm, rho, i[has_pos], j0[has_pos])
    j = j0.copy()
    has_neg = j0 > 0
    if has_neg.any():
        ineg = i[has_neg]
        r_neg = path_residual(asv, cm, rho, ineg, j0[has_neg] - 1)
        take_neg = -r_neg <= r_pos[has_neg]
        if take_neg.any():
            # walk back to the first index of the negative plateau
            first = _first_at_least(asv, cm, rho, ineg[take_neg], r_neg[take_neg])
            j[np.flatnonzero(has_neg)[take_neg]] = first

    miss, fa = path_rates(asv, cm, rho, i, j)
    residual = miss - fa
    # plateau: how many consecutive j share this residual value
    end = _first_at_least(asv, cm, rho, i, np.nextafter(residual, np.inf))
    return TeerPath(
        rho=rho,
        asv_index=i,
        cm_index=j,
        teer=(miss + fa) / 2.0,
        residual=residual,
        plateau=end - j,
        asv_critical_index=n_feasible - 1,
        cm_critical_index=_last_true(cm_feasible_mask(cm, rho)),
        asv=asv,
        cm=cm,
    )


def teer_along_path(path: TeerPath) -> list[tuple[float, float]]:
    """(ASV threshold, t-EER) pairs for plotting; index 0 maps to -inf."""
    return [(t, float(e)) for t, e in zip(path.asv_thresholds(), path.teer)]


def path_to_csv(paths: TeerPath | list[TeerPath], header: bool = True) -> str:
    if isinstance(paths, TeerPath):
        paths = [paths]
    buf = io.StringIO()
    if header:
        buf.write(PATH_CSV_HEADER + "\n")
    for p in paths:
        for ta, tc, e, r in zip(p.asv_thresholds(), p.cm_thresholds(), p.teer, p.residual):
            buf.write(f"{p.rho:.6g},{format_threshold(ta)},{format_threshold(tc)},{e:.6g},{r:.6g}\n")
    return buf.getvalue()
