import json

import numpy as np
import pytest

from conftest import random_curves
from teer.concurrent import (concurrent_from_path, concurrent_teer, local_grid_step, verify_intersection,
                             xpoint_residual)
from teer.curves import asv_rate_curve, build_rate_curve, cm_rate_curve
from teer.path import build_teer_path
from teer.score_io import AsvScoreSet, CmScoreSet
from teer.simulate import SimulationParams, simulate_scores
from teer.tandem import TandemPriors, TandemRates, tandem_total_error

# Frozen output of oracle_concurrent_teer for EERs (0.08, 0.35, 0.10); see test_simulate.
REF_ORACLE = (-1.649322633703961, -1.4885077240583051, 0.11446524363028344)


def _separated():
    asv = asv_rate_curve(AsvScoreSet([2.0, 3.0], [-2.0, -3.0], [-1.0, -1.5]))
    cm = cm_rate_curve(CmScoreSet([1.0, 2.0, 1.5], [-1.0, -4.0]))
    return asv, cm


def _sim_curves(n, seed):
    a, c, _ = simulate_scores(SimulationParams(n_per_class=n, seed=seed))
    return asv_rate_curve(a), cm_rate_curve(c)


def test_xpoint_at_accept_all_corner_is_zero():
    rng = np.random.default_rng(0)
    asv, cm = random_curves(rng)
    assert xpoint_residual(asv, cm, 0, 0) == 0.0


def test_xpoint_with_perfect_cm_equals_nontarget_fa():
    rng = np.random.default_rng(1)
    asv, _ = random_curves(rng)
    cm = build_rate_curve(np.array([1.0, 2.0]), {"spf": np.array([-1.0, -2.0])})
    j = cm.index_of(0.0)
    assert cm.miss[j] == 0.0 and cm.fa["spf"][j] == 0.0
    i = np.arange(asv.n_points)
    x = xpoint_residual(asv, cm, i, j)
    np.testing.assert_array_equal(x, asv.fa["non"])


def test_fully_separated_subsystems():
    asv, cm = _separated()
    p = concurrent_teer(asv, cm)
    assert p.teer == 0.0
    assert p.rate_spread == 0.0
    assert not p.warning


def test_json_fragment_keys():
    asv, cm = _separated()
    frag = concurrent_teer(asv, cm).to_json()
    assert set(frag) == {"concurrent_teer", "tau_asv", "tau_cm", "rate_spread", "warning"}
    json.dumps(frag)


def test_sign_change_brackets_oracle(ref_curves):
    asv, cm = ref_curves
    path = build_teer_path(asv, cm, 0.0)
    x = xpoint_residual(asv, cm, path.asv_index, path.cm_index)
    p = concurrent_from_path(path)
    k = int(np.flatnonzero(path.asv_index == p.asv_index)[0])
    # the chosen entry sits next to a sign change
    lo, hi = max(k - 1, 0), min(k + 1, len(path) - 1)
    assert (x[lo] >= 0 >= x[k]) or (x[k] >= 0 >= x[hi])
    # and the bracketing thresholds are close to the exact root
    tau_oracle = REF_ORACLE[0]
    thr = path.asv_thresholds()
    assert abs(thr[k] - tau_oracle) < 0.05


def test_matches_oracle(ref_curves):
    p = concurrent_teer(*ref_curves)
    assert abs(p.teer - REF_ORACLE[2]) <= 0.003
    assert abs(p.asv_threshold - REF_ORACLE[0]) < 0.05
    assert abs(p.cm_threshold - REF_ORACLE[1]) < 0.05


def test_rho_invariance(ref_curves):
    asv, cm = ref_curves
    pts = [concurrent_teer(asv, cm, rho) for rho in (0.0, 0.2, 0.5, 0.8, 1.0)]
    teers = [p.teer for p in pts]
    assert max(teers) - min(teers) <= 2 * pts[0].grid_step


@pytest.mark.parametrize("n,seed", [(1000, s) for s in range(4)] + [(10_000, 0), (10_000, 1)])
def test_rho_one_path_finds_same_point(n, seed):
    # index positions can drift by a few steps on flat stretches of the
    # curves; the operating point they describe must not
    asv, cm = _sim_curves(n, seed)
    p0, p1 = concurrent_teer(asv, cm, 0.0), concurrent_teer(asv, cm, 1.0)
    step = max(p0.grid_step, p1.grid_step)
    assert abs(p0.teer - p1.teer) <= step
    for a, b in ((p0.miss, p1.miss), (p0.fa_non, p1.fa_non), (p0.fa_spf, p1.fa_spf)):
        assert abs(a - b) <= 3 * step


def test_rate_spread_shrinks_with_sample_size():
    spreads = []
    for n in (1000, 10_000, 100_000):
        s = [concurrent_teer(*_sim_curves(n, seed)).rate_spread for seed in range(3)]
        spreads.append(float(np.mean(s)))
    # allow some noise between neighbouring sizes, demand a clear overall drop
    assert spreads[1] <= 1.5 * spreads[0]
    assert spreads[2] <= 1.5 * spreads[1]
    assert spreads[2] < spreads[0] / 3


def test_rate_spread_within_two_steps(ref_curves):
    p = concurrent_teer(*ref_curves)
    assert p.rate_spread <= 2 * p.grid_step


def test_teer_equals_spoof_product(ref_curves):
    asv, cm = ref_curves
    p = concurrent_teer(asv, cm)
    prod = asv.fa["spf"][p.asv_index] * cm.fa["spf"][p.cm_index]
    assert abs(p.teer - prod) <= p.rate_spread


def test_teer_equals_spoof_product_on_random_curves():
    rng = np.random.default_rng(5)
    for _ in range(50):
        asv, cm = random_curves(rng, ties=bool(rng.integers(2)))
        p = concurrent_teer(asv, cm)
        prod = asv.fa["spf"][p.asv_index] * cm.fa["spf"][p.cm_index]
        assert abs(p.teer - prod) <= p.rate_spread + 1e-15


def test_total_error_equals_teer(small_sim):
    asv, cm, _ = small_sim
    p = concurrent_teer(asv_rate_curve(asv), cm_rate_curve(cm))
    rates = TandemRates(p.miss, p.fa_non, p.fa_spf)
    rng = np.random.default_rng(9)
    for w in rng.dirichlet([1, 1, 1], size=50):
        w = w / w.sum()
        assert abs(tandem_total_error(TandemPriors(*w), rates) - p.teer) <= p.rate_spread + 1e-15


def test_verify_intersection_perfect():
    asv, cm = _separated()
    rep = verify_intersection(asv, cm, [0.0, 0.5, 1.0])
    assert rep.max_deviation == 0.0


def test_verify_intersection_reference(ref_curves):
    asv, cm = ref_curves
    rep = verify_intersection(asv, cm, [0.0, 0.5, 1.0])
    assert len(rep.rows) == 3
    assert rep.max_deviation <= 2 * rep.point.grid_step


def test_verify_intersection_single_rho(small_sim):
    asv, cm, _ = small_sim
    rep = verify_intersection(asv_rate_curve(asv), cm_rate_curve(cm), [0.5])
    assert len(rep.rows) == 1 and rep.rows[0][0] == 0.5


def test_grid_step_for_continuous_scores(small_sim):
    asv, cm, _ = small_sim
    a, c = asv_rate_curve(asv), cm_rate_curve(cm)
    p = concurrent_teer(a, c)
    # continuous scores: every step is one trial of the smallest class
    assert p.grid_step == pytest.approx(1.0 / 3000)
    assert local_grid_step(a, c, 0, 0) > 0


def test_warning_when_no_sign_change(caplog):
    # spoofs outscore bona fide trials in both subsystems, so the residual
    # stays negative along the whole path
    asv = asv_rate_curve(AsvScoreSet([1.0, 2.0], [-1.0, 3.0], [5.0, 6.0]))
    cm = cm_rate_curve(CmScoreSet([0.0, 1.0], [5.0, 6.0]))
    with caplog.at_level("WARNING"):
        p = concurrent_teer(asv, cm)
    assert p.warning and p.n_sign_changes == 0
    assert p.xpoint_residual == -0.5
    assert "no sign change" in caplog.text
