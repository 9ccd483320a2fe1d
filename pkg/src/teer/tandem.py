"""Error rates of a CM + ASV cascade combined with the AND rule.

A trial is accepted only if both subsystems accept it. CM and ASV scores
are treated as independent given the trial class, so each tandem rate is a
product of subsystem rates. All rate functions accept scalars or numpy
arrays and broadcast.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .curves import RateCurve

__all__ = [
    "TandemPriors",
    "TandemRates",
    "rho_from_priors",
    "tandem_miss",
    "tandem_fa_non",
    "tandem_fa_spf",
    "tandem_fa_total",
    "tandem_total_error",
    "tandem_rates_at",
    "check_rho",
]

_PRIOR_TOL = 1e-12


def check_rho(rho: float) -> float:
    rho = float(rho)
    if not 0.0 <= rho <= 1.0:
        raise ValueError(f"spoof prevalence must lie in [0, 1], got {rho}")
    return rho


@dataclass(frozen=True)
class TandemPriors:
    """Class priors of target, nontarget and spoof trials."""

    pi_tar: float
    pi_non: float
    pi_spoof: float

    def __post_init__(self):
        vals = (self.pi_tar, self.pi_non, self.pi_spoof)
        if min(vals) < 0:
            raise ValueError(f"priors must be nonnegative, got {vals}")
        if abs(sum(vals) - 1.0) > _PRIOR_TOL:
            raise ValueError(f"priors must sum to 1, got {sum(vals)!r}")


@dataclass(frozen=True)
class TandemRates:
    miss: float
    fa_non: float
    fa_spf: float

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.miss, self.fa_non, self.fa_spf)


def rho_from_priors(p: TandemPriors) -> float:
    """Spoof prevalence: share of spoofs among the negative trials."""
    neg = p.pi_non + p.pi_spoof
    if neg <= 0:
        raise ValueError("spoof prevalence undefined when pi_non = pi_spoof = 0")
    return p.pi_spoof / neg


def tandem_miss(p_miss_cm, p_miss_asv):
    # written as a + (1 - a) b so that it stays monotone in b under rounding
    return p_miss_asv + (1.0 - p_miss_asv) * p_miss_cm


def tandem_fa_non(p_miss_cm, p_fa_non_asv):
    return (1.0 - p_miss_cm) * p_fa_non_asv


def tandem_fa_spf(p_fa_cm, p_fa_spf_asv):
    return p_fa_cm * p_fa_spf_asv


def tandem_fa_total(rho, fa_non, fa_spf):
    """False-alarm rate of the nontarget/spoof mixture with spoof share rho."""
    return (1.0 - rho) * fa_non + rho * fa_spf


def tandem_total_error(p: TandemPriors, r: TandemRates) -> float:
    return p.pi_tar * r.miss + p.pi_non * r.fa_non + p.pi_spoof * r.fa_spf


def tandem_rates_at(asv: RateCurve, cm: RateCurve, i, j) -> TandemRates:
    """Tandem rates at ASV operating point ``i`` and CM operating point ``j``.

    The ASV curve must carry both "non" and "spf" false-alarm classes.
    """
    miss = tandem_miss(cm.miss[j], asv.miss[i])
    fa_non = tandem_fa_non(cm.miss[j], asv.fa["non"][i])
    fa_spf = tandem_fa_spf(cm.fa["spf"][j], asv.fa["spf"][i])
    if np.ndim(miss) == 0:
        return TandemRates(float(miss), float(fa_non), float(fa_spf))
    return TandemRates(miss, fa_non, fa_spf)
