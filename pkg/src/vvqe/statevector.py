"""Dense statevector simulation for the RY/RZ/CZ gate set.

Rotation gates follow the exp(-i*theta*G/2) convention.  Basis states are
indexed with qubit 0 as the least-significant bit, and gates act through
reshaped views of the amplitude array rather than explicit matrices.
"""

from __future__ import annotations

import math
import weakref
from dataclasses import dataclass

import numpy as np

from .pauli_algebra import QubitOperator, parity_signs, string_masks

MAX_QUBITS = 24

# Expectation values of Hermitian operators must be real; anything beyond
# this imaginary magnitude indicates a corrupted reduction.
IMAG_TOLERANCE = 1e-10


@dataclass
class Statevector:
    n_qubits: int
    amplitudes: np.ndarray

    def norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.amplitudes) ** 2)))


@dataclass(frozen=True)
class Gate:
    """A single gate: ``kind`` is ``ry``, ``rz`` or ``cz``.

    Rotations carry one target qubit and an angle; ``cz`` carries two
    distinct qubits and no angle.
    """

    kind: str
    qubits: tuple[int, ...]
    angle: float | None = None


def ry(target: int, angle: float) -> Gate:
    return Gate("ry", (target,), float(angle))


def rz(target: int, angle: float) -> Gate:
    return Gate("rz", (target,), float(angle))


def cz(qubit_a: int, qubit_b: int) -> Gate:
    return Gate("cz", (qubit_a, qubit_b))


def zero_state(n_qubits: int) -> Statevector:
    """The computational vacuum |00...0> on ``n_qubits`` qubits."""

    if not 1 <= n_qubits <= MAX_QUBITS:
        raise ValueError(
            f"n_qubits must be in [1, {MAX_QUBITS}], got {n_qubits}"
        )
    amplitudes = np.zeros(1 << n_qubits, dtype=np.complex128)
    amplitudes[0] = 1.0
    return Statevector(n_qubits, amplitudes)


def _apply_ry(amps: np.ndarray, n_qubits: int, target: int, angle: float) -> None:
    c = math.cos(0.5 * angle)
    s = math.sin(0.5 * angle)
    view = amps.reshape(1 << (n_qubits - 1 - target), 2, 1 << target)
    a0 = view[:, 0, :].copy()
    a1 = view[:, 1, :]
    view[:, 0, :] = c * a0 - s * a1
    view[:, 1, :] = s * a0 + c * a1


def _apply_rz(amps: np.ndarray, n_qubits: int, target: int, angle: float) -> None:
    phase = complex(math.cos(0.5 * angle), -math.sin(0.5 * angle))
    view = amps.reshape(1 << (n_qubits - 1 - target), 2, 1 << target)
    view[:, 0, :] *= phase
    view[:, 1, :] *= phase.conjugate()


def _apply_cz(amps: np.ndarray, n_qubits: int, qubit_a: int, qubit_b: int) -> None:
    lo, hi = (qubit_a, qubit_b) if qubit_a < qubit_b else (qubit_b, qubit_a)
    view = amps.reshape(
        1 << (n_qubits - 1 - hi), 2, 1 << (hi - lo - 1), 2, 1 << lo
    )
    view[:, 1, :, 1, :] *= -1.0


def apply_gate(state: Statevector, gate: Gate) -> Statevector:
    """Apply one gate in place and return the updated state."""

    n = state.n_qubits
    for qubit in gate.qubits:
        if not 0 <= qubit < n:
            raise ValueError(f"qubit {qubit} out of range for {n} qubits")
    if gate.kind in ("ry", "rz"):
        if gate.angle is None or not math.isfinite(gate.angle):
            raise ValueError(f"rotation angle must be finite, got {gate.angle!r}")
        if gate.kind == "ry":
            _apply_ry(state.amplitudes, n, gate.qubits[0], gate.angle)
        else:
            _apply_rz(state.amplitudes, n, gate.qubits[0], gate.angle)
    elif gate.kind == "cz":
        a, b = gate.qubits
        if a == b:
            raise ValueError("cz requires two distinct qubits")
        _apply_cz(state.amplitudes, n, a, b)
    else:
        raise ValueError(f"unknown gate kind {gate.kind!r}")
    return state


class _ExpectationPlan:
    """Precomputed gather/sign structure for fast repeated expectations.

    Terms sharing an X-mask read the same permuted amplitude products, so
    they are grouped: each group stores the gather indices, a dense sign
    matrix over basis states, and the complex per-term prefactors
    (coefficient times i**n_y).  Per-term values are scattered back into
    canonical term order and reduced with a fixed fan-in-2 tree so the
    result is bit-reproducible.
    """

    def __init__(self, operator: QubitOperator):
        n = operator.n_qubits
        self.n_terms = len(operator.terms)
        by_xmask: dict[int, list[int]] = {}
        masks = []
        for index, term in enumerate(operator.terms):
            x_mask, yz_mask, n_y = string_masks(term.factors)
            masks.append((x_mask, yz_mask, n_y))
            by_xmask.setdefault(x_mask, []).append(index)
        basis = np.arange(1 << n, dtype=np.intp)
        self.groups = []
        for x_mask, members in by_xmask.items():
            signs = np.empty((len(members), 1 << n), dtype=np.float64)
            prefactors = np.empty(len(members), dtype=np.complex128)
            for row, index in enumerate(members):
                _, yz_mask, n_y = masks[index]
                signs[row] = parity_signs(yz_mask, n)
                prefactors[row] = operator.terms[index].coefficient * (1j) ** (
                    n_y & 3
                )
            self.groups.append(
                (basis ^ x_mask, signs, prefactors, np.array(members, dtype=np.intp))
            )

    def term_values(self, amplitudes: np.ndarray) -> np.ndarray:
        values = np.zeros(self.n_terms, dtype=np.complex128)
        for gather, signs, prefactors, members in self.groups:
            products = np.conj(amplitudes[gather])
            products *= amplitudes
            stacked = np.column_stack((products.real, products.imag))
            parts = signs @ stacked
            values[members] = (parts[:, 0] + 1j * parts[:, 1]) * prefactors
        return values


_PLAN_CACHE: "weakref.WeakKeyDictionary[QubitOperator, _ExpectationPlan]" = (
    weakref.WeakKeyDictionary()
)


def _plan_for(operator: QubitOperator) -> _ExpectationPlan:
    plan = _PLAN_CACHE.get(operator)
    if plan is None:
        plan = _ExpectationPlan(operator)
        _PLAN_CACHE[operator] = plan
    return plan


def _pairwise_sum(values: np.ndarray) -> complex:
    """Deterministic fan-in-2 tree reduction."""

    if values.size == 0:
        return 0.0 + 0.0j
    current = values
    while current.size > 1:
        paired = current.size - (current.size & 1)
        reduced = current[0:paired:2] + current[1:paired:2]
        if current.size & 1:
            reduced = np.concatenate((reduced, current[-1:]))
        current = reduced
    return complex(current[0])


def expectation(state: Statevector, operator: QubitOperator) -> float:
    """Exact <psi|H|psi> for a Pauli-sum operator.

    Raises ValueError on register mismatch or if the reduced value has an
    imaginary component beyond IMAG_TOLERANCE.
    """

    if state.n_qubits != operator.n_qubits:
        raise ValueError(
            f"state on {state.n_qubits} qubits, operator on "
            f"{operator.n_qubits} qubits"
        )
    total = _pairwise_sum(_plan_for(operator).term_values(state.amplitudes))
    if abs(total.imag) > IMAG_TOLERANCE:
        raise ValueError(
            f"expectation has non-negligible imaginary part {total.imag:.3e}"
        )
    return float(total.real)
