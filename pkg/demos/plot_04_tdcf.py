"""
Detection costs at and away from the concurrent point
=====================================================

The tandem detection cost function weighs the three error types by cost
and prior. At the concurrent point all three rates are equal, so the cost
collapses to the t-EER times a constant.
"""

from teer import (SimulationParams, TandemPriors, TdcfParams, asv_rate_curve, cm_rate_curve, concurrent_teer,
                  min_tdcf, simulate_scores)
from teer.tdcf import tdcf_bounds_at_concurrent, tdcf_grid

asv, cm, _ = simulate_scores(SimulationParams(n_per_class=20_000, seed=5))
a, c = asv_rate_curve(asv), cm_rate_curve(cm)
point = concurrent_teer(a, c)

params = TdcfParams(c_miss=1.0, c_fa_non=10.0, c_fa_spf=10.0, asserted=TandemPriors(0.9, 0.05, 0.05))
best = min_tdcf(a, c, params)
print(f"min t-DCF {best.value:.5f} at tau_asv={a.threshold_at(best.asv_index):+.3f}, "
      f"tau_cm={c.threshold_at(best.cm_index):+.3f}")
print(f"t-DCF at the concurrent point {float(tdcf_grid(a, c, params, point.asv_index, point.cm_index)):.5f}")

lo, hi, linear = tdcf_bounds_at_concurrent(params, point.teer)
print(f"linear form {linear:.5f}, sandwiched in [{lo:.5f}, {hi:.5f}]")

# Fixing the ASV threshold leaves only the CM threshold to tune
fixed = min_tdcf(a, c, params, fixed_asv_index=point.asv_index)
print(f"with ASV pinned at the concurrent threshold: {fixed.value:.5f}")
