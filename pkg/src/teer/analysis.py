"""Reporting helpers: the battery of familiar special-case EERs, and
class-conditional ASV/CM score correlations."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .concurrent import ConcurrentPoint, concurrent_teer
from .curves import asv_rate_curve, cm_rate_curve, eer
from .score_io import AsvScoreSet, CmScoreSet, PairedScoreSet, TrialClass
from .tandem import check_rho

__all__ = [
    "SpecialCaseEers",
    "CorrelationEntry",
    "CorrelationReport",
    "special_case_eers",
    "class_conditional_correlation",
]


@dataclass(frozen=True)
class SpecialCaseEers:
    """EERs obtained by pinning one tandem threshold at -inf.

    Fields are None when the scores needed for them are missing.
    """

    rho: float
    asv_tar_vs_non: Optional[float]
    asv_tar_vs_spf: Optional[float]
    asv_tar_vs_mix: Optional[float]
    cm_bona_vs_spf: float
    concurrent: Optional[float]
    concurrent_point: Optional[ConcurrentPoint] = field(default=None, repr=False)

    def to_json(self) -> dict:
        return {
            "rho": self.rho,
            "asv_tar_vs_non": self.asv_tar_vs_non,
            "asv_tar_vs_spf": self.asv_tar_vs_spf,
            "asv_tar_vs_mix": self.asv_tar_vs_mix,
            "cm_bona_vs_spf": self.cm_bona_vs_spf,
            "concurrent": self.concurrent,
        }


def special_case_eers(asv: AsvScoreSet, cm: CmScoreSet, rho: float) -> SpecialCaseEers:
    """ASV EERs against nontargets, spoofs and their rho-mixture, the CM EER,
    and the concurrent t-EER."""
    rho = check_rho(rho)
    a = asv_rate_curve(asv)
    c = cm_rate_curve(cm)
    has_non, has_spf = "non" in a.fa, "spf" in a.fa

    tar_non = eer(a, "non").eer if has_non else None
    tar_spf = eer(a, "spf").eer if has_spf else None
    if rho == 0.0:
        mix = tar_non
    elif rho == 1.0:
        mix = tar_spf
    elif has_non and has_spf:
        mix = eer(a, {"non": 1.0 - rho, "spf": rho}).eer
    else:
        mix = None

    point = concurrent_teer(a, c) if has_non and has_spf else None
    return SpecialCaseEers(
        rho=rho,
        asv_tar_vs_non=tar_non,
        asv_tar_vs_spf=tar_spf,
        asv_tar_vs_mix=mix,
        cm_bona_vs_spf=eer(c, "spf").eer,
        concurrent=point.teer if point else None,
        concurrent_point=point,
    )


@dataclass(frozen=True)
class CorrelationEntry:
    """Pearson r of one group; ``r`` is None with a ``reason`` when undefined."""

    n: int
    r: Optional[float] = None
    reason: Optional[str] = None

    def to_json(self) -> dict:
        if self.r is None:
            return {"n": self.n, "reason": self.reason}
        return {"n": self.n, "pearson_r": self.r}


@dataclass(frozen=True)
class CorrelationReport:
    per_class: dict[str, CorrelationEntry]
    per_attack: Optional[dict[str, CorrelationEntry]] = None

    def to_json(self) -> dict:
        out = {"per_class": {k: v.to_json() for k, v in self.per_class.items()}}
        if self.per_attack is not None:
            out["per_attack"] = {k: v.to_json() for k, v in self.per_attack.items()}
        return out


def _pearson(x: np.ndarray, y: np.ndarray) -> CorrelationEntry:
    n = int(x.size)
    if n < 2:
        return CorrelationEntry(n, reason="fewer than 2 trials")
    xc, yc = x - x.mean(), y - y.mean()
    sxx, syy = float(xc @ xc), float(yc @ yc)
    if sxx == 0.0 or syy == 0.0:
        return CorrelationEntry(n, reason="zero variance")
    r = float(xc @ yc) / np.sqrt(sxx * syy)
    return CorrelationEntry(n, r=float(np.clip(r, -1.0, 1.0)))


def class_conditional_correlation(paired: PairedScoreSet) -> CorrelationReport:
    """Pearson correlation of (ASV, CM) scores within each trial class, and
    within each spoofing attack when attack ids are present."""
    per_class = {}
    for cls in TrialClass:
        m = paired.mask(cls)
        if m.any():
            per_class[cls.value] = _pearson(paired.asv[m], paired.cm[m])

    per_attack = None
    ids = np.array([a if a is not None else "" for a in paired.attack_ids], dtype=object)
    if any(a is not None for a in paired.attack_ids):
        per_attack = {}
        for attack in sorted({a for a in paired.attack_ids if a is not None}):
            m = ids == attack
            per_attack[attack] = _pearson(paired.asv[m], paired.cm[m])
    return CorrelationReport(per_class, per_attack)
