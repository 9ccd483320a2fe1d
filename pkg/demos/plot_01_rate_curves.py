"""
Rate curves and the familiar EERs
=================================

Sweep a threshold over detection scores, read off miss and false-alarm
rates, and compute the equal error rate of each subsystem on its own.
"""

import numpy as np

from teer import SimulationParams, asv_rate_curve, cm_rate_curve, eer, simulate_scores
from teer.curves import weighted_error_min

# Simulated scores: ASV EERs of 8% (nontargets) and 35% (spoofs), CM EER of 10%
asv, cm, _ = simulate_scores(SimulationParams(0.08, 0.35, 0.10, n_per_class=20_000, seed=1))
a = asv_rate_curve(asv)
c = cm_rate_curve(cm)
print("ASV operating points:", a.n_points, " CM operating points:", c.n_points)

# Index 0 is the accept-all point: nothing is missed, every impostor gets in
print("index 0 -> miss", a.miss[0], "fa_non", a.fa["non"][0])

for label, curve, tag in (("ASV tar vs non", a, "non"), ("ASV tar vs spf", a, "spf"), ("CM bona vs spf", c, "spf")):
    r = eer(curve, tag)
    print(f"{label:15s} EER = {r.eer:.4f} at threshold {curve.threshold_at(r.threshold_index):+.3f}")

# A spoof-heavy evaluation set sees a blend of the two ASV false-alarm curves
for rho in (0.0, 0.5, 1.0):
    print(f"rho = {rho:.1f}: ASV EER against the mixture = {eer(a, {'non': 1 - rho, 'spf': rho}).eer:.4f}")

# The EER bounds the Bayes error for every class prior, up to one trial
worst = max(weighted_error_min(a, "non", p) for p in np.linspace(0, 1, 101))
print(f"worst-prior minimum error {worst:.4f} <= EER {eer(a, 'non').eer:.4f} + 1/{a.min_count()}")
