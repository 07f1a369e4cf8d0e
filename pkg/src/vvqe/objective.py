"""VQE objective: energy expectation and parameter-shift gradients.

Every energy evaluation is tallied in an EvalCounter; a gradient costs
exactly two shifted evaluations per parameter (shift +-pi/2, divided by
two) with no caching and no unshifted evaluation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .ansatz import AnsatzDescriptor, prepare_state
from .pauli_algebra import QubitOperator
from .statevector import expectation

SHIFT = 0.5 * math.pi


@dataclass
class EvalCounter:
    """Running tally of energy evaluations and gradient calls."""

    energy_evals: int = 0
    gradient_calls: int = 0


class Objective:
    """Expected energy of the ansatz state under a fixed Hamiltonian."""

    def __init__(
        self,
        hamiltonian: QubitOperator,
        ansatz: AnsatzDescriptor,
        counter: EvalCounter | None = None,
    ):
        if hamiltonian.n_qubits != ansatz.n_qubits:
            raise ValueError(
                f"Hamiltonian on {hamiltonian.n_qubits} qubits, ansatz on "
                f"{ansatz.n_qubits}"
            )
        self.hamiltonian = hamiltonian
        self.ansatz = ansatz
        self.counter = counter if counter is not None else EvalCounter()

    @property
    def n_params(self) -> int:
        return self.ansatz.n_params

    def _energy_raw(self, params: np.ndarray) -> float:
        return expectation(prepare_state(self.ansatz, params), self.hamiltonian)

    def energy(self, params: np.ndarray) -> float:
        """E(theta); counts one energy evaluation."""

        value = self._energy_raw(np.asarray(params, dtype=np.float64))
        self.counter.energy_evals += 1
        return value

    def gradient(self, params: np.ndarray) -> np.ndarray:
        """Parameter-shift gradient; counts 2 * n_params energy evaluations.

        dE/dtheta_i = (E(theta_i + pi/2) - E(theta_i - pi/2)) / 2, exact for
        rotation generators with eigenvalues +-1/2.
        """

        params = np.asarray(params, dtype=np.float64)
        if params.shape != (self.n_params,):
            raise ValueError(
                f"expected {self.n_params} parameters, got shape {params.shape}"
            )
        grad = np.empty(self.n_params, dtype=np.float64)
        shifted = params.copy()
        for i in range(self.n_params):
            shifted[i] = params[i] + SHIFT
            plus = self._energy_raw(shifted)
            shifted[i] = params[i] - SHIFT
            minus = self._energy_raw(shifted)
            shifted[i] = params[i]
            grad[i] = 0.5 * (plus - minus)
        self.counter.energy_evals += 2 * self.n_params
        self.counter.gradient_calls += 1
        return grad


def evals_per_iteration(n_params: int, forces_per_iter: int = 1) -> int:
    """Energy evaluations per optimizer iteration: 1 + forces * 2 * n_params.

    The leading 1 is the per-iteration energy log; each force evaluation is
    a full parameter-shift gradient.
    """

    if n_params < 0:
        raise ValueError(f"n_params must be non-negative, got {n_params}")
    if forces_per_iter not in (1, 2):
        raise ValueError(
            f"forces_per_iter must be 1 or 2, got {forces_per_iter}"
        )
    return 1 + forces_per_iter * 2 * n_params
