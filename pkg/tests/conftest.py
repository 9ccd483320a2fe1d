import os
import sys

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(__file__))

from teer.curves import asv_rate_curve, build_rate_curve, cm_rate_curve  # noqa: E402
from teer.simulate import SimulationParams, simulate_scores  # noqa: E402


def random_curves(rng, max_n=300, ties=False):
    """Random ASV and CM curves with independent class sizes."""
    def draw(mean, n):
        x = rng.normal(mean, rng.uniform(0.5, 2.0), n)
        return np.round(x, 1) if ties else x

    n = lambda: int(rng.integers(1, max_n + 1))  # noqa: E731
    asv = build_rate_curve(draw(1.0, n()), {"non": draw(-1.0, n()), "spf": draw(rng.uniform(-1, 1), n())})
    cm = build_rate_curve(draw(1.0, n()), {"spf": draw(rng.uniform(-2, 1), n())})
    return asv, cm


@pytest.fixture(scope="session")
def ref_scores():
    """Reference simulation, 1e5 trials per class."""
    return simulate_scores(SimulationParams(0.08, 0.35, 0.10, n_per_class=100_000, seed=20240101))


@pytest.fixture(scope="session")
def ref_curves(ref_scores):
    asv, cm, _ = ref_scores
    return asv_rate_curve(asv), cm_rate_curve(cm)


@pytest.fixture(scope="session")
def small_sim():
    asv, cm, paired = simulate_scores(SimulationParams(n_per_class=3000, seed=7))
    return asv, cm, paired
