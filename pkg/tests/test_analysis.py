import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from teer.analysis import class_conditional_correlation, special_case_eers
from teer.score_io import AsvScoreSet, CmScoreSet, PairedScoreSet, TrialClass

T, N, S = TrialClass.TARGET, TrialClass.NONTARGET, TrialClass.SPOOF


def _paired(asv, cm, labels, attacks=None):
    return PairedScoreSet(np.asarray(asv, float), np.asarray(cm, float), tuple(labels),
                          tuple(attacks) if attacks is not None else ())


@pytest.mark.parametrize("seed", range(5))
def test_mixture_endpoints_collapse(seed):
    rng = np.random.default_rng(seed)
    asv = AsvScoreSet(rng.normal(1, 1, 80), rng.normal(-1, 1, 60), rng.normal(0, 1, 40))
    cm = CmScoreSet(rng.normal(1, 1, 70), rng.normal(-1, 1, 30))
    r0, r1 = special_case_eers(asv, cm, 0.0), special_case_eers(asv, cm, 1.0)
    assert r0.asv_tar_vs_mix == r0.asv_tar_vs_non
    assert r1.asv_tar_vs_mix == r1.asv_tar_vs_spf
    mid = special_case_eers(asv, cm, 0.5)
    lo, hi = sorted((mid.asv_tar_vs_non, mid.asv_tar_vs_spf))
    assert lo - 0.05 <= mid.asv_tar_vs_mix <= hi + 0.05


def test_reference_battery(ref_scores):
    asv, cm, _ = ref_scores
    r = special_case_eers(asv, cm, 0.5)
    assert abs(r.asv_tar_vs_non - 0.08) <= 0.005
    assert abs(r.asv_tar_vs_spf - 0.35) <= 0.005
    assert abs(r.cm_bona_vs_spf - 0.10) <= 0.005
    assert 0.0 <= r.concurrent <= 1.0
    assert set(r.to_json()) == {"rho", "asv_tar_vs_non", "asv_tar_vs_spf", "asv_tar_vs_mix",
                                "cm_bona_vs_spf", "concurrent"}


def test_missing_spoofs_reported_absent():
    asv = AsvScoreSet([1.0, 2.0], [-1.0, 0.0], [])
    cm = CmScoreSet([1.0, 2.0], [0.0])
    r = special_case_eers(asv, cm, 0.5)
    assert r.asv_tar_vs_spf is None and r.asv_tar_vs_mix is None and r.concurrent is None
    assert r.asv_tar_vs_non is not None


def test_correlation_identity_and_negation():
    rng = np.random.default_rng(0)
    x = rng.normal(size=200)
    rep = class_conditional_correlation(_paired(np.r_[x, x], np.r_[x, -x], [T] * 200 + [N] * 200))
    assert rep.per_class["target"].r == 1.0
    assert rep.per_class["nontarget"].r == -1.0
    assert "spoof" not in rep.per_class
    assert rep.per_attack is None


def test_correlation_recovers_known_value():
    rng = np.random.default_rng(2024)
    n, rho = 1_000_000, 0.3
    z = rng.standard_normal((2, n))
    y = rho * z[0] + np.sqrt(1 - rho**2) * z[1]
    rep = class_conditional_correlation(_paired(z[0], y, [S] * n))
    assert abs(rep.per_class["spoof"].r - rho) <= 0.01


def test_simulated_classes_are_uncorrelated(small_sim):
    _, _, paired = small_sim
    rep = class_conditional_correlation(paired)
    for cls in ("target", "nontarget", "spoof"):
        e = rep.per_class[cls]
        assert abs(e.r) <= 3 / np.sqrt(e.n)


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), a=st.floats(0.01, 100), b=st.floats(-100, 100),
       c=st.floats(0.01, 100), d=st.floats(-100, 100))
def test_affine_invariance(seed, a, b, c, d):
    rng = np.random.default_rng(seed)
    x = rng.normal(size=50)
    y = 0.5 * x + rng.normal(size=50)
    labels = [T] * 50
    r = class_conditional_correlation(_paired(x, y, labels)).per_class["target"].r
    moved = class_conditional_correlation(_paired(a * x + b, c * y + d, labels)).per_class["target"].r
    flipped = class_conditional_correlation(_paired(x, -y, labels)).per_class["target"].r
    assert moved == pytest.approx(r, abs=1e-9)
    assert flipped == pytest.approx(-r, abs=1e-12)


def test_zero_variance_is_undefined():
    rep = class_conditional_correlation(_paired([1.0, 2.0, 3.0], [5.0, 5.0, 5.0], [T] * 3))
    e = rep.per_class["target"]
    assert e.r is None and e.reason == "zero variance"
    assert "pearson_r" not in e.to_json() and e.to_json()["reason"] == "zero variance"


def test_single_trial_is_undefined():
    rep = class_conditional_correlation(_paired([1.0, 2.0, 3.0], [1.0, 2.0, 0.0], [T, T, N]))
    assert rep.per_class["nontarget"].r is None
    assert rep.per_class["nontarget"].n == 1


def test_per_attack_block():
    rng = np.random.default_rng(5)
    x = rng.normal(size=60)
    labels = [T] * 20 + [S] * 40
    attacks = [None] * 20 + ["A01"] * 20 + ["A02"] * 20
    cm = np.r_[rng.normal(size=20), x[20:40], -x[40:60]]
    rep = class_conditional_correlation(_paired(x, cm, labels, attacks))
    assert set(rep.per_attack) == {"A01", "A02"}
    assert rep.per_attack["A01"].r == 1.0
    assert rep.per_attack["A02"].r == -1.0
    assert rep.per_attack["A01"].n == 20
    assert set(rep.to_json()) == {"per_class", "per_attack"}
