"""
Are ASV and CM scores independent within a class?
=================================================

Tandem rates multiply subsystem rates, which is only right when the two
scores are independent once the trial class is known. Pearson correlation
per class is a quick check.
"""

import numpy as np

from teer import PairedScoreSet, SimulationParams, TrialClass, class_conditional_correlation, simulate_scores

# The simulator draws each coordinate independently
_, _, paired = simulate_scores(SimulationParams(n_per_class=10_000, seed=2))
for cls, entry in class_conditional_correlation(paired).per_class.items():
    print(f"{cls:10s} n={entry.n:6d}  r={entry.r:+.4f}  (noise level ~{1 / np.sqrt(entry.n):.4f})")

# Two attacks, one fooling both systems in step, one not at all
rng = np.random.default_rng(0)
x = rng.normal(size=400)
cm = np.r_[0.8 * x[:200] + 0.6 * rng.normal(size=200), rng.normal(size=200)]
spoofs = PairedScoreSet(x, cm, (TrialClass.SPOOF,) * 400, ("A17",) * 200 + ("A18",) * 200)
for attack, entry in class_conditional_correlation(spoofs).per_attack.items():
    print(f"attack {attack}: r={entry.r:+.3f}")
