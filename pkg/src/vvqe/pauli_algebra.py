"""Qubit Hamiltonians as real-weighted sums of Pauli strings.

The text interchange format is line oriented: one term per line, a real
coefficient followed by whitespace-separated factors such as ``X0 Z3``.
Blank lines and ``#`` comments are ignored.  A line holding only a
coefficient is an identity term.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

AXES = ("X", "Y", "Z")

# Terms whose merged coefficient falls below this magnitude are dropped.
MERGE_THRESHOLD = 1e-14

# to_dense_matrix refuses anything bigger than this (2^14 = 16384 rows).
MAX_DENSE_QUBITS = 14


class HamiltonianFormatError(ValueError):
    """Raised when interchange text cannot be parsed into an operator."""


@dataclass(frozen=True)
class PauliTerm:
    """One Pauli string with a real weight.

    ``factors`` is a tuple of ``(qubit_index, axis)`` pairs with strictly
    ascending indices; the empty tuple is the identity.
    """

    coefficient: float
    factors: tuple[tuple[int, str], ...] = ()

    def __post_init__(self) -> None:
        coeff = float(self.coefficient)
        if not math.isfinite(coeff):
            raise ValueError(f"coefficient must be finite, got {self.coefficient!r}")
        factors = tuple((int(q), str(ax)) for q, ax in self.factors)
        prev = -1
        for qubit, axis in factors:
            if axis not in AXES:
                raise ValueError(f"unknown Pauli axis {axis!r}")
            if qubit < 0:
                raise ValueError(f"negative qubit index {qubit}")
            if qubit == prev:
                raise ValueError(f"duplicate qubit {qubit} within a term")
            if qubit < prev:
                raise ValueError("factor indices must be strictly ascending")
            prev = qubit
        object.__setattr__(self, "coefficient", coeff)
        object.__setattr__(self, "factors", factors)


class QubitOperator:
    """Immutable sum of Pauli terms on a fixed qubit register.

    Construction merges duplicate strings, drops terms with merged
    coefficient below ``MERGE_THRESHOLD``, and sorts the survivors
    lexicographically by factor tuple, so equal operators compare equal
    regardless of input order.
    """

    def __init__(self, terms: Iterable[PauliTerm], n_qubits: int):
        n_qubits = int(n_qubits)
        if n_qubits < 1:
            raise ValueError(f"n_qubits must be positive, got {n_qubits}")
        merged: dict[tuple[tuple[int, str], ...], float] = {}
        for term in terms:
            if term.factors and term.factors[-1][0] >= n_qubits:
                raise ValueError(
                    f"qubit index {term.factors[-1][0]} out of range for "
                    f"{n_qubits} qubits"
                )
            merged[term.factors] = merged.get(term.factors, 0.0) + term.coefficient
        self._n_qubits = n_qubits
        self._terms = tuple(
            PauliTerm(coeff, factors)
            for factors, coeff in sorted(merged.items())
            if abs(coeff) >= MERGE_THRESHOLD
        )

    @property
    def n_qubits(self) -> int:
        return self._n_qubits

    @property
    def terms(self) -> tuple[PauliTerm, ...]:
        return self._terms

    def __iter__(self) -> Iterator[PauliTerm]:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QubitOperator):
            return NotImplemented
        return self._n_qubits == other._n_qubits and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self._n_qubits, self._terms))

    def __repr__(self) -> str:
        return f"QubitOperator(n_qubits={self._n_qubits}, n_terms={len(self._terms)})"


def parse_operator(text: str, n_qubits: int) -> QubitOperator:
    """Parse interchange text into a QubitOperator.

    Raises HamiltonianFormatError with a line number for malformed
    coefficients, bad factor tokens, out-of-range indices, and duplicate
    or non-ascending qubits within a term.
    """

    terms = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        try:
            coefficient = float(tokens[0])
        except ValueError:
            raise HamiltonianFormatError(
                f"line {lineno}: malformed coefficient {tokens[0]!r}"
            ) from None
        if not math.isfinite(coefficient):
            raise HamiltonianFormatError(
                f"line {lineno}: coefficient must be finite, got {tokens[0]!r}"
            )
        factors = []
        prev = -1
        for token in tokens[1:]:
            axis, index_text = token[:1], token[1:]
            if axis not in AXES:
                raise HamiltonianFormatError(
                    f"line {lineno}: unknown axis letter in factor {token!r}"
                )
            if not index_text.isdigit():
                raise HamiltonianFormatError(
                    f"line {lineno}: malformed qubit index in factor {token!r}"
                )
            index = int(index_text)
            if index >= n_qubits:
                raise HamiltonianFormatError(
                    f"line {lineno}: qubit index {index} out of range for "
                    f"{n_qubits} qubits"
                )
            if index == prev:
                raise HamiltonianFormatError(
                    f"line {lineno}: duplicate qubit {index} within a term"
                )
            if index < prev:
                raise HamiltonianFormatError(
                    f"line {lineno}: factor indices must be strictly ascending"
                )
            prev = index
            factors.append((index, axis))
        terms.append(PauliTerm(coefficient, tuple(factors)))
    return QubitOperator(terms, n_qubits)


def format_coefficient(value: float) -> str:
    """Render a float with 17 significant digits, e.g. ``1.0000000000000000e0``."""

    mantissa, exponent = f"{value:.16e}".split("e")
    return f"{mantissa}e{int(exponent)}"


def serialize_operator(operator: QubitOperator) -> str:
    """Render an operator in the interchange format, one term per line.

    Terms appear in lexicographic factor order and round-trip exactly
    through parse_operator.
    """

    lines = []
    for term in operator.terms:
        parts = [format_coefficient(term.coefficient)]
        parts.extend(f"{axis}{qubit}" for qubit, axis in term.factors)
        lines.append(" ".join(parts))
    return "".join(line + "\n" for line in lines)


def string_masks(factors: tuple[tuple[int, str], ...]) -> tuple[int, int, int]:
    """Bit masks describing a Pauli string's action on basis states.

    Returns ``(x_mask, yz_mask, n_y)``: flipped bits, phase-carrying bits,
    and the number of Y factors.
    """

    x_mask = 0
    yz_mask = 0
    n_y = 0
    for qubit, axis in factors:
        bit = 1 << qubit
        if axis != "Z":
            x_mask |= bit
        if axis != "X":
            yz_mask |= bit
        if axis == "Y":
            n_y += 1
    return x_mask, yz_mask, n_y


def parity_signs(yz_mask: int, n_qubits: int) -> np.ndarray:
    """Vector of (-1)**popcount(j & yz_mask) over all basis states j."""

    j = np.arange(1 << n_qubits, dtype=np.int64)
    bits = j & yz_mask
    for shift in (32, 16, 8, 4, 2, 1):
        bits ^= bits >> shift
    return 1.0 - 2.0 * (bits & 1).astype(np.float64)


def to_dense_matrix(operator: QubitOperator) -> np.ndarray:
    """Dense complex matrix of the operator in the computational basis.

    Qubit 0 is the least-significant bit of the basis index.  Limited to
    MAX_DENSE_QUBITS qubits.
    """

    if operator.n_qubits > MAX_DENSE_QUBITS:
        raise ValueError(
            f"dense matrix requested for {operator.n_qubits} qubits; "
            f"limit is {MAX_DENSE_QUBITS}"
        )
    dim = 1 << operator.n_qubits
    matrix = np.zeros((dim, dim), dtype=np.complex128)
    columns = np.arange(dim)
    for term in operator.terms:
        x_mask, yz_mask, n_y = string_masks(term.factors)
        phase = (1j) ** (n_y & 3)
        weights = term.coefficient * phase * parity_signs(yz_mask, operator.n_qubits)
        matrix[columns ^ x_mask, columns] += weights
    return matrix
