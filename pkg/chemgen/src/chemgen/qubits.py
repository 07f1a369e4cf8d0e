"""Jordan-Wigner mapping from fermionic integrals to qubit operators.

Spin orbital P maps to qubit P.  A creation operator becomes

    a+_P = (1/2) Z_0 ... Z_{P-1} (X_P - i Y_P)

and its adjoint takes the plus sign.  Operators are held as dictionaries
from Pauli-string keys (tuples of ``(qubit, axis)`` pairs, ascending by
qubit) to complex coefficients, multiplied with the single-qubit phase
table, then written out with real coefficients.
"""

from __future__ import annotations

import numpy as np

PauliKey = tuple[tuple[int, str], ...]

MERGE_THRESHOLD = 1e-12
IMAG_TOLERANCE = 1e-10

# (left, right) -> (phase, product) for single-qubit Paulis.
_PRODUCT = {
    ("X", "X"): (1.0, "I"),
    ("Y", "Y"): (1.0, "I"),
    ("Z", "Z"): (1.0, "I"),
    ("X", "Y"): (1j, "Z"),
    ("Y", "X"): (-1j, "Z"),
    ("Y", "Z"): (1j, "X"),
    ("Z", "Y"): (-1j, "X"),
    ("Z", "X"): (1j, "Y"),
    ("X", "Z"): (-1j, "Y"),
}


def multiply_keys(left: PauliKey, right: PauliKey) -> tuple[complex, PauliKey]:
    """Product of two Pauli strings as (phase, merged string)."""

    axes = dict(left)
    phase = 1.0 + 0.0j
    for qubit, axis in right:
        if qubit not in axes:
            axes[qubit] = axis
            continue
        extra, product = _PRODUCT[(axes[qubit], axis)]
        phase *= extra
        if product == "I":
            del axes[qubit]
        else:
            axes[qubit] = product
    return phase, tuple(sorted(axes.items()))


def multiply_operators(
    left: dict[PauliKey, complex], right: dict[PauliKey, complex]
) -> dict[PauliKey, complex]:
    """Distributive product of two string-sum operators."""

    result: dict[PauliKey, complex] = {}
    for key_l, coeff_l in left.items():
        for key_r, coeff_r in right.items():
            phase, key = multiply_keys(key_l, key_r)
            result[key] = result.get(key, 0.0) + coeff_l * coeff_r * phase
    return result


def ladder_operator(index: int, create: bool) -> dict[PauliKey, complex]:
    """Jordan-Wigner image of a_index^dagger (create) or a_index."""

    chain = tuple((k, "Z") for k in range(index))
    x_key = chain + ((index, "X"),)
    y_key = chain + ((index, "Y"),)
    y_coeff = -0.5j if create else 0.5j
    return {x_key: 0.5, y_key: y_coeff}


def _accumulate(
    total: dict[PauliKey, complex], term: dict[PauliKey, complex], scale: complex
) -> None:
    for key, coeff in term.items():
        total[key] = total.get(key, 0.0) + scale * coeff


def qubit_hamiltonian(
    core_mo: np.ndarray, eri_mo: np.ndarray, e_nuclear: float
) -> dict[PauliKey, float]:
    """Map MO-basis integrals to a qubit operator with real coefficients.

    ``core_mo`` is the one-electron Hamiltonian in the MO basis and
    ``eri_mo`` the chemist-notation two-electron tensor (pq|rs).  Spin
    orbital 2p is the alpha spin of spatial orbital p, 2p + 1 the beta.
    """

    n_spatial = core_mo.shape[0]
    n_so = 2 * n_spatial
    total: dict[PauliKey, complex] = {(): complex(e_nuclear)}

    creators = [ladder_operator(k, create=True) for k in range(n_so)]
    annihilators = [ladder_operator(k, create=False) for k in range(n_so)]

    for p in range(n_so):
        for q in range(p & 1, n_so, 2):
            value = core_mo[p // 2, q // 2]
            if value == 0.0:
                continue
            _accumulate(
                total, multiply_operators(creators[p], annihilators[q]), value
            )

    # (1/2) <PQ|RS> a+_P a+_Q a_S a_R with <PQ|RS> = (pr|qs) and matching
    # spins in the P,R and Q,S slots.
    for p in range(n_so):
        for q in range(n_so):
            left = multiply_operators(creators[p], creators[q])
            for r in range(p & 1, n_so, 2):
                for s in range(q & 1, n_so, 2):
                    value = eri_mo[p // 2, r // 2, q // 2, s // 2]
                    if value == 0.0:
                        continue
                    product = multiply_operators(
                        left,
                        multiply_operators(annihilators[s], annihilators[r]),
                    )
                    _accumulate(total, product, 0.5 * value)

    cleaned: dict[PauliKey, float] = {}
    for key, coeff in total.items():
        if abs(coeff.imag) > IMAG_TOLERANCE:
            raise ValueError(
                f"non-hermitian residue {coeff.imag!r} on term {key!r}"
            )
        if abs(coeff.real) < MERGE_THRESHOLD:
            continue
        cleaned[key] = float(coeff.real)
    return cleaned


def format_coefficient(value: float) -> str:
    """17-significant-digit scientific form with a bare exponent."""

    mantissa, exponent = f"{value:.16e}".split("e")
    return f"{mantissa}e{int(exponent)}"


def serialize_hamiltonian(
    operator: dict[PauliKey, float], header_lines: list[str] | None = None
) -> str:
    """Render an operator as one term per line, sorted by Pauli string."""

    lines = []
    for comment in header_lines or []:
        lines.append(f"# {comment}" if comment else "#")
    for key in sorted(operator):
        parts = [format_coefficient(operator[key])]
        parts.extend(f"{axis}{qubit}" for qubit, axis in key)
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"


def dense_matrix(operator: dict[PauliKey, float], n_qubits: int) -> np.ndarray:
    """Dense matrix of the operator; qubit 0 is the least-significant bit."""

    dim = 1 << n_qubits
    matrix = np.zeros((dim, dim), dtype=complex)
    columns = np.arange(dim)
    for key, coeff in operator.items():
        x_mask = 0
        yz_mask = 0
        n_y = 0
        for qubit, axis in key:
            if qubit >= n_qubits:
                raise ValueError(f"qubit {qubit} outside register of {n_qubits}")
            bit = 1 << qubit
            if axis in ("X", "Y"):
                x_mask |= bit
            if axis in ("Y", "Z"):
                yz_mask |= bit
            if axis == "Y":
                n_y += 1
        signs = np.ones(dim)
        masked = columns & yz_mask
        for shift in (16, 8, 4, 2, 1):
            masked ^= masked >> shift
        signs[(masked & 1).astype(bool)] = -1.0
        matrix[columns ^ x_mask, columns] += coeff * (1j**(n_y & 3)) * signs
    return matrix
