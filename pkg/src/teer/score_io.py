"""Reading and writing labeled detection scores.

Two line-oriented text formats are supported.

Subsystem score files hold one trial per line::

    [trial_id] <score> <label>

with ``label`` in {target, nontarget, spoof} for ASV files and
{bonafide, spoof} for CM files.

Paired score files hold both subsystem scores for the same trial::

    <asv_score> <cm_score> <label> [attack_id]

Lines starting with ``#`` and blank lines are skipped.
"""

from __future__ import annotations

import enum
import math
import os
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

__all__ = [
    "TrialClass",
    "CmClass",
    "ScoreFormatError",
    "AsvScoreSet",
    "CmScoreSet",
    "PairedScoreSet",
    "parse_subsystem_scores",
    "parse_paired_scores",
    "format_asv_scores",
    "format_cm_scores",
    "format_paired_scores",
    "read_scores",
]


class TrialClass(enum.Enum):
    """Tandem trial classes. Target is the only positive class."""

    TARGET = "target"
    NONTARGET = "nontarget"
    SPOOF = "spoof"


class CmClass(enum.Enum):
    BONAFIDE = "bonafide"
    SPOOF = "spoof"


class ScoreFormatError(ValueError):
    """Raised for malformed score text. ``line`` is 1-based, or None."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def _as_array(values: Iterable[float]) -> np.ndarray:
    arr = np.asarray(list(values) if not isinstance(values, np.ndarray) else values,
                     dtype=np.float64).ravel()
    if not np.all(np.isfinite(arr)):
        raise ScoreFormatError("scores must be finite")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class AsvScoreSet:
    """ASV scores split by trial class.

    ``tar`` must be non-empty and at least one of ``non``/``spf`` too.
    """

    tar: np.ndarray
    non: np.ndarray = field(default_factory=lambda: np.empty(0))
    spf: np.ndarray = field(default_factory=lambda: np.empty(0))

    def __post_init__(self):
        for name in ("tar", "non", "spf"):
            object.__setattr__(self, name, _as_array(getattr(self, name)))
        if self.tar.size == 0:
            raise ScoreFormatError("ASV scores need at least one target trial")
        if self.non.size == 0 and self.spf.size == 0:
            raise ScoreFormatError("ASV scores need nontarget or spoof trials")

    def counts(self) -> dict[str, int]:
        return {"tar": int(self.tar.size), "non": int(self.non.size), "spf": int(self.spf.size)}


@dataclass(frozen=True)
class CmScoreSet:
    """CM scores. ``bona`` pools target and nontarget bona fide trials."""

    bona: np.ndarray
    spf: np.ndarray

    def __post_init__(self):
        for name in ("bona", "spf"):
            object.__setattr__(self, name, _as_array(getattr(self, name)))
        if self.bona.size == 0:
            raise ScoreFormatError("CM scores need at least one bonafide trial")
        if self.spf.size == 0:
            raise ScoreFormatError("CM scores need at least one spoof trial")

    def counts(self) -> dict[str, int]:
        return {"bona": int(self.bona.size), "spf": int(self.spf.size)}


@dataclass(frozen=True)
class PairedScoreSet:
    """Joint (ASV, CM) scores per trial, in input order."""

    asv: np.ndarray
    cm: np.ndarray
    labels: tuple[TrialClass, ...]
    attack_ids: tuple[str | None, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "asv", _as_array(self.asv))
        object.__setattr__(self, "cm", _as_array(self.cm))
        labels = tuple(TrialClass(lab) for lab in self.labels)
        object.__setattr__(self, "labels", labels)
        ids = tuple(self.attack_ids) if self.attack_ids else (None,) * len(labels)
        object.__setattr__(self, "attack_ids", ids)
        if not (self.asv.size == self.cm.size == len(labels) == len(ids)):
            raise ValueError("paired score columns differ in length")
        for lab, aid in zip(labels, ids):
            if aid is not None and lab is not TrialClass.SPOOF:
                raise ScoreFormatError("attack_id is only allowed on spoof rows")

    def __len__(self) -> int:
        return len(self.labels)

    def rows(self) -> list[tuple[float, float, TrialClass, str | None]]:
        return [(float(a), float(c), lab, aid)
                for a, c, lab, aid in zip(self.asv, self.cm, self.labels, self.attack_ids)]

    def mask(self, cls: TrialClass) -> np.ndarray:
        return np.array([lab is cls for lab in self.labels], dtype=bool)

    def subsystem_sets(self) -> tuple[AsvScoreSet, CmScoreSet]:
        """Split into per-subsystem score sets (CM bona fide = target + nontarget)."""
        tar, non, spf = (self.mask(c) for c in TrialClass)
        asv = AsvScoreSet(self.asv[tar], self.asv[non], self.asv[spf])
        cm = CmScoreSet(self.cm[tar | non], self.cm[spf])
        return asv, cm


def _lines(text: str | bytes) -> Iterable[tuple[int, list[str]]]:
    if isinstance(text, (bytes, bytearray)):
        text = text.decode("utf-8")
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield lineno, line.split()


def _parse_score(token: str, lineno: int) -> float:
    try:
        value = float(token)
    except ValueError:
        raise ScoreFormatError(f"cannot parse score {token!r}", lineno) from None
    if not math.isfinite(value):
        raise ScoreFormatError(f"non-finite score {token!r}", lineno)
    return value


_ASV_LABELS = {"target": "tar", "nontarget": "non", "spoof": "spf"}
_CM_LABELS = {"bonafide": "bona", "spoof": "spf"}


def parse_subsystem_scores(text: str | bytes, kind: str) -> AsvScoreSet | CmScoreSet:
    """Parse a subsystem score file.

    Args:
      text: file contents.
      kind: ``"asv"`` or ``"cm"``.

    Returns:
      AsvScoreSet or CmScoreSet with scores grouped by label, input order kept.
    """
    if kind == "asv":
        labels, groups = _ASV_LABELS, {"tar": [], "non": [], "spf": []}
    elif kind == "cm":
        labels, groups = _CM_LABELS, {"bona": [], "spf": []}
    else:
        raise ValueError(f"kind must be 'asv' or 'cm', got {kind!r}")

    for lineno, fields in _lines(text):
        if len(fields) == 3:
            fields = fields[1:]
        if len(fields) != 2:
            raise ScoreFormatError(f"expected 2 or 3 fields, got {len(fields)}", lineno)
        score, label = fields
        if label not in labels:
            raise ScoreFormatError(f"unknown label {label!r}", lineno)
        groups[labels[label]].append(_parse_score(score, lineno))

    if kind == "asv":
        return AsvScoreSet(**groups)
    return CmScoreSet(**groups)


def parse_paired_scores(text: str | bytes) -> PairedScoreSet:
    asv, cm, labels, ids = [], [], [], []
    for lineno, fields in _lines(text):
        if len(fields) not in (3, 4):
            raise ScoreFormatError(f"expected 3 or 4 fields, got {len(fields)}", lineno)
        try:
            label = TrialClass(fields[2])
        except ValueError:
            raise ScoreFormatError(f"unknown label {fields[2]!r}", lineno) from None
        attack = fields[3] if len(fields) == 4 else None
        if attack is not None and label is not TrialClass.SPOOF:
            raise ScoreFormatError("attack_id on non-spoof row", lineno)
        asv.append(_parse_score(fields[0], lineno))
        cm.append(_parse_score(fields[1], lineno))
        labels.append(label)
        ids.append(attack)
    return PairedScoreSet(np.array(asv), np.array(cm), tuple(labels), tuple(ids))


def _fmt(x: float) -> str:
    # repr round-trips exactly, so re-parsing yields identical floats
    return repr(float(x))


def format_asv_scores(scores: AsvScoreSet) -> str:
    out = []
    for label, attr in _ASV_LABELS.items():
        out.extend(f"{_fmt(s)} {label}\n" for s in getattr(scores, attr))
    return "".join(out)


def format_cm_scores(scores: CmScoreSet) -> str:
    out = []
    for label, attr in _CM_LABELS.items():
        out.extend(f"{_fmt(s)} {label}\n" for s in getattr(scores, attr))
    return "".join(out)


def format_paired_scores(paired: PairedScoreSet) -> str:
    out = []
    for a, c, lab, aid in paired.rows():
        line = f"{_fmt(a)} {_fmt(c)} {lab.value}"
        if aid is not None:
            line += f" {aid}"
        out.append(line + "\n")
    return "".join(out)


def read_scores(path: str | os.PathLike, kind: str) -> AsvScoreSet | CmScoreSet | PairedScoreSet:
    """Read a score file from disk; ``kind`` is "asv", "cm" or "paired"."""
    with open(path, "rb") as fh:
        data = fh.read()
    if kind == "paired":
        return parse_paired_scores(data)
    return parse_subsystem_scores(data, kind)

