"""
Tandem EER paths
================

Chain a countermeasure in front of a speaker verifier and, for each ASV
threshold, pick the CM threshold that balances tandem misses against
tandem false alarms. The balance depends on the spoof prevalence rho.
"""

import numpy as np

from teer import SimulationParams, asv_rate_curve, build_teer_path, cm_rate_curve, simulate_scores
from teer.path import path_to_csv

asv, cm, _ = simulate_scores(SimulationParams(n_per_class=5000, seed=3))
a, c = asv_rate_curve(asv), cm_rate_curve(cm)

for rho in (0.0, 0.5, 1.0):
    path = build_teer_path(a, c, rho)
    k = int(np.argmin(path.teer))
    print(f"rho={rho:.1f}: {len(path)} feasible ASV thresholds, "
          f"smallest t-EER on the path {path.teer[k]:.4f} at tau_asv={path.asv_thresholds()[k]:+.3f}")

# With the ASV accepting everything and only spoofs around (rho = 1),
# the tandem is just the CM
path = build_teer_path(a.truncated(0), c, 1.0)
print("accept-all ASV, rho=1:", path.teer[0])

# Same ASV at rho = 0: half the targets must be rejected to match the
# impostors it lets through, so the t-EER is one half
print("accept-all ASV, rho=0:", build_teer_path(a.truncated(0), c, 0.0).teer[0])

# Paths export as CSV, one row per feasible ASV threshold
print(path_to_csv(build_teer_path(a, c, 0.5)).splitlines()[:4])
