"""Empirical miss / false-alarm curves of a single detector.

A detector accepts a trial iff ``score > threshold``. For ``U`` distinct
score values a curve has ``U + 1`` operating points: index 0 places the
threshold below every score (accept all) and index ``k >= 1`` places it
exactly at ``thresholds[k - 1]``, which rejects that score value. The last
index therefore rejects everything.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

__all__ = [
    "RateCurve",
    "EerResult",
    "build_rate_curve",
    "asv_rate_curve",
    "cm_rate_curve",
    "eer",
    "weighted_error_min",
    "curve_to_csv",
    "format_threshold",
]


def _frozen(arr) -> np.ndarray:
    arr = np.array(arr, dtype=np.float64)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class RateCurve:
    """Step-function error rates over a sorted threshold grid.

    Attributes:
      thresholds: sorted distinct score values, length U.
      miss: positive-class miss rate per operating point, length U + 1.
      fa: false-alarm rate per negative class tag, each length U + 1.
      counts: number of scores behind each rate, keyed by "pos" and the
        negative class tags.
    """

    thresholds: np.ndarray
    miss: np.ndarray
    fa: Mapping[str, np.ndarray]
    counts: Mapping[str, int]

    @property
    def n_points(self) -> int:
        return self.miss.size

    @property
    def last(self) -> int:
        return self.miss.size - 1

    def threshold_at(self, k: int) -> float:
        """Threshold value of operating point ``k`` (``-inf`` for index 0)."""
        if not 0 <= k < self.n_points:
            raise IndexError(k)
        return -np.inf if k == 0 else float(self.thresholds[k - 1])

    def index_of(self, threshold: float) -> int:
        """Operating point whose rates match a threshold value.

        Any threshold, not only grid values, maps onto the step function.
        """
        return int(np.searchsorted(self.thresholds, threshold, side="right"))

    def mixed_fa(self, weights: Mapping[str, float]) -> np.ndarray:
        """Convex combination of the per-class false-alarm rates."""
        total = np.zeros(self.n_points)
        for tag, w in weights.items():
            if w != 0:
                total = total + w * self.fa[tag]
        return total

    def truncated(self, last: int) -> "RateCurve":
        """Keep only operating points ``0..last``.

        ``truncated(0)`` is an accept-all detector: a single operating point
        with miss 0 and false alarm 1.
        """
        if not 0 <= last < self.n_points:
            raise IndexError(last)
        return RateCurve(
            thresholds=_frozen(self.thresholds[:last]),
            miss=_frozen(self.miss[: last + 1]),
            fa={tag: _frozen(v[: last + 1]) for tag, v in self.fa.items()},
            counts=dict(self.counts),
        )

    def min_count(self) -> int:
        return min(n for n in self.counts.values() if n > 0)


@dataclass(frozen=True)
class EerResult:
    eer: float
    threshold_index: int
    miss_at: float
    fa_at: float


def build_rate_curve(pos: Sequence[float], neg_by_class: Mapping[str, Sequence[float]]) -> RateCurve:
    """Count miss and false-alarm rates at every distinct score value.

    Args:
      pos: positive-class scores.
      neg_by_class: negative-class scores keyed by class tag. Empty classes
        are dropped from the curve.

    Returns:
      RateCurve whose thresholds are the sorted distinct union of all scores.
    """
    pos = np.sort(np.asarray(pos, dtype=np.float64).ravel())
    if pos.size == 0:
        raise ValueError("positive scores are empty")
    negs = {}
    for tag, scores in neg_by_class.items():
        scores = np.sort(np.asarray(scores, dtype=np.float64).ravel())
        if scores.size:
            negs[tag] = scores
    if not negs:
        raise ValueError("all negative classes are empty")
    if not np.all(np.isfinite(pos)) or not all(np.all(np.isfinite(v)) for v in negs.values()):
        raise ValueError("scores must be finite")

    thresholds = np.unique(np.concatenate([pos, *negs.values()]))
    # counts of scores <= each threshold
    miss = np.concatenate(([0.0], np.searchsorted(pos, thresholds, side="right") / pos.size))
    fa = {}
    for tag, scores in negs.items():
        below = np.searchsorted(scores, thresholds, side="right")
        fa[tag] = _frozen(np.concatenate(([1.0], (scores.size - below) / scores.size)))

    counts = {"pos": int(pos.size)}
    counts.update({tag: int(v.size) for tag, v in negs.items()})
    return RateCurve(_frozen(thresholds), _frozen(miss), fa, counts)


def asv_rate_curve(scores) -> RateCurve:
    """ASV curve with false-alarm classes "non" and "spf" (empty ones dropped)."""
    return build_rate_curve(scores.tar, {"non": scores.non, "spf": scores.spf})


def cm_rate_curve(scores) -> RateCurve:
    """CM curve: bona fide is positive, false-alarm class "spf"."""
    return build_rate_curve(scores.bona, {"spf": scores.spf})


def _nearest_equal(miss: np.ndarray, fa: np.ndarray) -> EerResult:
    k = int(np.argmin(np.abs(miss - fa)))  # first index on ties
    return EerResult(eer=float((miss[k] + fa[k]) / 2), threshold_index=k,
                     miss_at=float(miss[k]), fa_at=float(fa[k]))


def eer(curve: RateCurve, fa_class: str | Mapping[str, float]) -> EerResult:
    """Equal error rate by nearest-neighbour search over operating points.

    ``fa_class`` is a negative class tag, or a mapping of tag to weight for
    a mixture of negative classes. The smallest index wins ties and the
    reported EER is the midpoint of miss and false alarm there.
    """
    if isinstance(fa_class, str):
        fa = curve.fa[fa_class]
    else:
        fa = curve.mixed_fa(fa_class)
    return _nearest_equal(curve.miss, fa)


def weighted_error_min(curve: RateCurve, fa_class: str, db_prior: float) -> float:
    """Minimum over operating points of ``p * miss + (1 - p) * fa``."""
    if not 0.0 <= db_prior <= 1.0:
        raise ValueError(f"prior must lie in [0, 1], got {db_prior}")
    total = db_prior * curve.miss + (1.0 - db_prior) * curve.fa[fa_class]
    return float(total.min())


def format_threshold(t: float) -> str:
    return "-inf" if t == -np.inf else repr(float(t))


def curve_to_csv(curve: RateCurve) -> str:
    """CSV with one row per operating point: threshold, miss, fa_<class>..."""
    tags = list(curve.fa)
    buf = io.StringIO()
    buf.write(",".join(["threshold", "miss", *(f"fa_{t}" for t in tags)]) + "\n")
    for k in range(curve.n_points):
        row = [format_threshold(curve.threshold_at(k)), f"{curve.miss[k]:.6g}"]
        row += [f"{curve.fa[t][k]:.6g}" for t in tags]
        buf.write(",".join(row) + "\n")
    return buf.getvalue()
