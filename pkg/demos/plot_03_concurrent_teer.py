"""
The concurrent t-EER
====================

All t-EER paths cross at one operating point where the tandem miss rate
and both tandem false-alarm rates are equal. That common value does not
depend on the spoof prevalence.
"""

from teer import SimulationParams, asv_rate_curve, cm_rate_curve, concurrent_teer, simulate_scores
from teer.concurrent import verify_intersection
from teer.simulate import oracle_concurrent_teer

params = SimulationParams(0.08, 0.35, 0.10, n_per_class=100_000, seed=11)
asv, cm, _ = simulate_scores(params)
a, c = asv_rate_curve(asv), cm_rate_curve(cm)

point = concurrent_teer(a, c)
print(f"concurrent t-EER {point.teer:.5f} at (tau_asv, tau_cm) = ({point.asv_threshold:+.4f}, {point.cm_threshold:+.4f})")
print(f"three rates: miss {point.miss:.5f}  fa_non {point.fa_non:.5f}  fa_spf {point.fa_spf:.5f}")

# Searching along any other path lands on the same point
for rho in (0.2, 0.5, 0.8, 1.0):
    print(f"  via rho={rho}: {concurrent_teer(a, c, rho).teer:.5f}")

# Balance check at the point for several prevalences
rep = verify_intersection(a, c, [0.0, 0.5, 1.0], point)
print("largest |miss - fa_rho|:", f"{rep.max_deviation:.2e}", " grid step:", f"{point.grid_step:.0e}")

# The exact answer for the Gaussian model that generated the scores
tau_a, tau_c, exact = oracle_concurrent_teer(params)
print(f"closed-form value {exact:.5f} at ({tau_a:+.4f}, {tau_c:+.4f})")
