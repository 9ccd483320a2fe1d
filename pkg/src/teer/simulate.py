"""Synthetic tandem scores from three unit-variance bivariate Gaussians.

Each class has a 2-D Gaussian over (ASV score, CM score) with identity
covariance. Targets sit at the origin. Nontargets are shifted along the
ASV axis only, spoofs along both axes. Each shift is the separation that
gives the requested two-class EER, ``d = -2 * Phi^-1(eer)``.

The module also provides exact rate functions for these distributions and
a root solver for the concurrent t-EER, used as test oracles.
"""

from __future__ import annotations

import hashlib
from dataclasses import asdict, dataclass

import numpy as np
from scipy.optimize import brentq
from scipy.special import ndtr, ndtri

from .score_io import AsvScoreSet, CmScoreSet, PairedScoreSet, TrialClass

__all__ = [
    "SimulationParams",
    "OracleRates",
    "gaussian_separation",
    "simulate_scores",
    "oracle_rates",
    "oracle_concurrent_teer",
    "oracle_path_cm_threshold",
    "REFERENCE_EERS",
]

# Example EERs: ASV target-vs-nontarget, ASV target-vs-spoof, CM bona-vs-spoof
REFERENCE_EERS = (0.08, 0.35, 0.10)

_INF = 40.0  # standing in for +-inf in bracketing; Phi(-40) underflows to 0


@dataclass(frozen=True)
class SimulationParams:
    eer_asv_non: float = REFERENCE_EERS[0]
    eer_asv_spf: float = REFERENCE_EERS[1]
    eer_cm: float = REFERENCE_EERS[2]
    n_per_class: int = 10_000
    seed: int = 0

    def __post_init__(self):
        for name in ("eer_asv_non", "eer_asv_spf", "eer_cm"):
            e = getattr(self, name)
            if not 0.0 < e < 0.5:
                raise ValueError(f"{name} must lie in (0, 0.5), got {e}")
        if int(self.n_per_class) != self.n_per_class or self.n_per_class < 1:
            raise ValueError(f"n_per_class must be a positive integer, got {self.n_per_class}")
        if not 0 <= int(self.seed) < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")

    @property
    def d_non(self) -> float:
        return gaussian_separation(self.eer_asv_non)

    @property
    def d_spf(self) -> float:
        return gaussian_separation(self.eer_asv_spf)

    @property
    def d_cm(self) -> float:
        return gaussian_separation(self.eer_cm)

    def to_dict(self) -> dict:
        return asdict(self)


def gaussian_separation(eer: float) -> float:
    """Mean gap between two unit-variance Gaussians whose EER is ``eer``."""
    if not 0.0 < eer < 0.5:
        raise ValueError(f"eer must lie in (0, 0.5), got {eer}")
    return float(-2.0 * ndtri(eer))


def _normals(seed: int, stream: int, n: int) -> np.ndarray:
    """Standard normals by inverse CDF of a counter-based (Philox) stream."""
    key = np.array([seed & 0xFFFFFFFFFFFFFFFF, stream], dtype=np.uint64)
    gen = np.random.Generator(np.random.Philox(key=key))
    bits = gen.integers(0, 2**53, size=n, dtype=np.uint64)
    u = (bits.astype(np.float64) + 0.5) * 2.0**-53  # strictly inside (0, 1)
    return ndtri(u)


def simulate_scores(p: SimulationParams) -> tuple[AsvScoreSet, CmScoreSet, PairedScoreSet]:
    """Draw ``n_per_class`` trials per class.

    Returns three views of the same draws: ASV scores by class, CM scores
    (bona fide = target + nontarget) and the paired rows.
    """
    n = int(p.n_per_class)
    means = {
        TrialClass.TARGET: (0.0, 0.0),
        TrialClass.NONTARGET: (-p.d_non, 0.0),
        TrialClass.SPOOF: (-p.d_spf, -p.d_cm),
    }
    asv, cm = {}, {}
    for k, (cls, (m_asv, m_cm)) in enumerate(means.items()):
        asv[cls] = m_asv + _normals(p.seed, 2 * k, n)
        cm[cls] = m_cm + _normals(p.seed, 2 * k + 1, n)

    asv_set = AsvScoreSet(asv[TrialClass.TARGET], asv[TrialClass.NONTARGET], asv[TrialClass.SPOOF])
    cm_set = CmScoreSet(np.concatenate([cm[TrialClass.TARGET], cm[TrialClass.NONTARGET]]),
                        cm[TrialClass.SPOOF])
    labels = tuple(cls for cls in means for _ in range(n))
    paired = PairedScoreSet(
        np.concatenate([asv[c] for c in means]),
        np.concatenate([cm[c] for c in means]),
        labels,
    )
    return asv_set, cm_set, paired


def params_digest(p: SimulationParams) -> str:
    return hashlib.sha256(repr(sorted(p.to_dict().items())).encode()).hexdigest()[:16]


@dataclass(frozen=True)
class OracleRates:
    asv_miss: float
    asv_fa_non: float
    asv_fa_spf: float
    cm_miss: float
    cm_fa: float


def _upper(x):
    # P(Z > x) without cancellation
    return ndtr(-x)


def oracle_rates(p: SimulationParams, tau_asv: float, tau_cm: float) -> OracleRates:
    """Exact subsystem rates of the simulated distributions at given thresholds."""
    return OracleRates(
        asv_miss=float(ndtr(tau_asv)),
        asv_fa_non=float(_upper(tau_asv + p.d_non)),
        asv_fa_spf=float(_upper(tau_asv + p.d_spf)),
        cm_miss=float(ndtr(tau_cm)),
        cm_fa=float(_upper(tau_cm + p.d_cm)),
    )


def oracle_path_cm_threshold(p: SimulationParams, tau_asv: float) -> float:
    """CM threshold on the exact rho = 0 path for a given ASV threshold.

    Solves tandem miss = tandem nontarget false alarm by bisection in the
    CM threshold. Returns ``-_INF`` when the ASV threshold is infeasible.
    """
    r = oracle_rates(p, tau_asv, 0.0)

    def gap(tc):
        pc = ndtr(tc)
        return r.asv_miss + (1 - r.asv_miss) * pc - (1 - pc) * r.asv_fa_non

    if gap(-_INF) >= 0:
        return -_INF
    return brentq(gap, -_INF, _INF, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=500)


def _xpoint(p: SimulationParams, tau_asv: float) -> tuple[float, float]:
    tc = oracle_path_cm_threshold(p, tau_asv)
    r = oracle_rates(p, tau_asv, tc)
    return r.asv_fa_non * (1 - r.cm_miss) - r.cm_fa * r.asv_fa_spf, tc


def oracle_concurrent_teer(p: SimulationParams, tol: float = 1e-10, max_iter: int = 200
                           ) -> tuple[float, float, float]:
    """Exact concurrent t-EER of the simulated distributions.

    Outer bisection on the ASV threshold over the feasible region, inner
    root solve for the CM threshold on the rho = 0 path.

    Raises RuntimeError when ``eer_asv_spf < eer_asv_non``; then no
    concurrent point exists apart from the degenerate accept-all corner.

    Returns:
      (tau_asv, tau_cm, teer)
    """
    # rho = 0 feasibility ends where the ASV miss equals the nontarget false alarm
    lo, hi = -_INF / 4, -p.d_non / 2
    x_lo, _ = _xpoint(p, lo)
    x_hi, tc_hi = _xpoint(p, hi)
    if abs(x_hi) <= tol:
        # equal ASV EERs: the point sits at the feasibility edge with an accept-all CM
        r = oracle_rates(p, hi, tc_hi)
        return float(hi), float(tc_hi), float(r.asv_fa_spf * r.cm_fa)
    if not x_lo > 0 > x_hi:
        # eer_asv_spf < eer_asv_non: the ASV rejects spoofs better than
        # nontargets and no point off the accept-all corner balances all rates
        raise RuntimeError(f"intersection residual does not change sign ({x_lo}, {x_hi}); "
                           "a concurrent point needs eer_asv_spf >= eer_asv_non")
    best = (abs(x_hi), hi, tc_hi)
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            # bracket is two adjacent doubles: near the feasibility edge the
            # residual can be too steep for ``tol`` to be reachable
            _, mid, tc = best
            break
        x_mid, tc = _xpoint(p, mid)
        best = min(best, (abs(x_mid), mid, tc))
        if abs(x_mid) <= tol:
            break
        if x_mid > 0:
            lo = mid
        else:
            hi = mid
    else:
        raise RuntimeError("concurrent t-EER bisection did not converge")
    r = oracle_rates(p, mid, tc)
    return float(mid), float(tc), float(r.asv_fa_spf * r.cm_fa)
