"""Shared fixtures and test objectives."""

from pathlib import Path

import numpy as np
import pytest

from vvqe.objective import EvalCounter

REPO_ROOT = Path(__file__).resolve().parent.parent
DATA_DIR = REPO_ROOT / "data"

H2_REFERENCE = -1.1059333523
LIH_REFERENCE = -7.8823869936
H2_PATH = DATA_DIR / "h2_sto3g_0.977.ham"
LIH_PATH = DATA_DIR / "lih_sto3g_1.596.ham"


class QuadraticObjective:
    """E(theta) = 0.5 * theta.W.theta with analytic gradients.

    Mimics the parameter-shift cost model so optimizer eval-accounting
    tests see the same ledger arithmetic as the VQE objective: one unit
    per energy, 2 * n_params per gradient.
    """

    def __init__(self, n_params, weights=None):
        self.n_params = n_params
        self.weights = (
            np.ones(n_params) if weights is None else np.asarray(weights, float)
        )
        self.counter = EvalCounter()

    def energy(self, params):
        params = np.asarray(params, dtype=np.float64)
        self.counter.energy_evals += 1
        return 0.5 * float(self.weights @ (params * params))

    def energy_silent(self, params):
        params = np.asarray(params, dtype=np.float64)
        return 0.5 * float(self.weights @ (params * params))

    def gradient(self, params):
        params = np.asarray(params, dtype=np.float64)
        self.counter.energy_evals += 2 * self.n_params
        self.counter.gradient_calls += 1
        return self.weights * params


@pytest.fixture
def quadratic_1d():
    return QuadraticObjective(1)


@pytest.fixture
def quadratic_5d():
    return QuadraticObjective(5)
