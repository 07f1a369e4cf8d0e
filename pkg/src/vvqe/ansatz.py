"""Hardware-efficient ansatz: layered RY/RZ rotations with a linear CZ ladder.

Each of the ``depth`` layers applies RY then RZ on every qubit in ascending
order followed by CZ on neighbouring pairs (q, q+1); a final rotation layer
closes the circuit, giving ``2 * n_qubits * (depth + 1)`` parameters.
Parameter slots are numbered in gate-encounter order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .statevector import Statevector, _apply_cz, _apply_ry, _apply_rz, zero_state

SEED_MASK = (1 << 64) - 1

# Initial angles are drawn uniformly from [0, INIT_SCALE).
INIT_SCALE = 0.1


@dataclass(frozen=True)
class LayoutGate:
    """Gate template within an ansatz: rotations carry a parameter slot."""

    kind: str
    qubits: tuple[int, ...]
    slot: int | None = None


@dataclass(frozen=True)
class AnsatzDescriptor:
    n_qubits: int
    depth: int
    n_params: int
    gate_layout: tuple[LayoutGate, ...]


def build_hea(n_qubits: int, depth: int) -> AnsatzDescriptor:
    """Construct the hardware-efficient ansatz layout."""

    if n_qubits < 1:
        raise ValueError(f"n_qubits must be positive, got {n_qubits}")
    if depth < 0:
        raise ValueError(f"depth must be non-negative, got {depth}")
    layout: list[LayoutGate] = []
    slot = 0

    def rotation_sublayer() -> None:
        nonlocal slot
        for qubit in range(n_qubits):
            layout.append(LayoutGate("ry", (qubit,), slot))
            slot += 1
            layout.append(LayoutGate("rz", (qubit,), slot))
            slot += 1

    for _ in range(depth):
        rotation_sublayer()
        for qubit in range(n_qubits - 1):
            layout.append(LayoutGate("cz", (qubit, qubit + 1)))
    rotation_sublayer()
    return AnsatzDescriptor(n_qubits, depth, slot, tuple(layout))


def prepare_state(ansatz: AnsatzDescriptor, params: np.ndarray) -> Statevector:
    """Run the ansatz circuit on the vacuum with the given angles."""

    params = np.asarray(params, dtype=np.float64)
    if params.shape != (ansatz.n_params,):
        raise ValueError(
            f"expected {ansatz.n_params} parameters, got shape {params.shape}"
        )
    if not np.all(np.isfinite(params)):
        raise ValueError("parameters must be finite")
    state = zero_state(ansatz.n_qubits)
    amps = state.amplitudes
    n = ansatz.n_qubits
    for gate in ansatz.gate_layout:
        if gate.kind == "ry":
            _apply_ry(amps, n, gate.qubits[0], params[gate.slot])
        elif gate.kind == "rz":
            _apply_rz(amps, n, gate.qubits[0], params[gate.slot])
        else:
            _apply_cz(amps, n, gate.qubits[0], gate.qubits[1])
    return state


def _splitmix64_stream(seed: int, count: int) -> list[int]:
    """The splitmix64 sequence as raw 64-bit integers."""

    state = seed & SEED_MASK
    values = []
    for _ in range(count):
        state = (state + 0x9E3779B97F4A7C15) & SEED_MASK
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & SEED_MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & SEED_MASK
        z ^= z >> 31
        values.append(z)
    return values


def init_params(ansatz: AnsatzDescriptor, seed: int) -> np.ndarray:
    """Deterministic initial angles, uniform in [0, INIT_SCALE).

    Uses splitmix64 so the draw is identical across platforms and numpy
    versions: each 64-bit output maps to a double via (z >> 11) * 2**-53.
    """

    if not 0 <= seed <= SEED_MASK:
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")
    raw = _splitmix64_stream(seed, ansatz.n_params)
    return np.array(
        [(z >> 11) * 2.0**-53 * INIT_SCALE for z in raw], dtype=np.float64
    )
