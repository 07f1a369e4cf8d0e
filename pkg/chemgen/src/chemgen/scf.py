"""Restricted Hartree-Fock with DIIS convergence acceleration."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass
class ScfResult:
    energy: float            # total energy including nuclear repulsion
    mo_coefficients: np.ndarray
    mo_energies: np.ndarray
    n_iterations: int


class ScfConvergenceError(RuntimeError):
    pass


def restricted_hartree_fock(
    overlap: np.ndarray,
    kinetic: np.ndarray,
    nuclear: np.ndarray,
    eri: np.ndarray,
    n_electrons: int,
    e_nuclear: float,
    *,
    max_iterations: int = 300,
    energy_tol: float = 1e-13,
    error_tol: float = 1e-11,
    diis_size: int = 8,
) -> ScfResult:
    """Closed-shell SCF; ``eri`` is in chemist notation (pq|rs)."""

    if n_electrons % 2 != 0:
        raise ValueError(
            f"restricted SCF needs an even electron count, got {n_electrons}"
        )
    n_occupied = n_electrons // 2
    core = kinetic + nuclear

    # Symmetric orthogonalization.
    s_values, s_vectors = np.linalg.eigh(overlap)
    if s_values.min() < 1e-10:
        raise ScfConvergenceError("overlap matrix is numerically singular")
    orthogonalizer = s_vectors @ np.diag(s_values**-0.5) @ s_vectors.T

    def density_from(fock):
        fock_ortho = orthogonalizer.T @ fock @ orthogonalizer
        energies, vectors = np.linalg.eigh(fock_ortho)
        coefficients = orthogonalizer @ vectors
        occupied = coefficients[:, :n_occupied]
        return occupied @ occupied.T, coefficients, energies

    density, coefficients, mo_energies = density_from(core)
    energy = 0.0
    fock_history: list[np.ndarray] = []
    error_history: list[np.ndarray] = []

    for iteration in range(1, max_iterations + 1):
        coulomb = np.einsum("pqrs,rs->pq", eri, density)
        exchange = np.einsum("prqs,rs->pq", eri, density)
        fock_raw = core + 2.0 * coulomb - exchange
        fock = fock_raw

        # DIIS on the orthonormal-basis commutator FDS - SDF.
        error = orthogonalizer.T @ (
            fock_raw @ density @ overlap - overlap @ density @ fock_raw
        ) @ orthogonalizer
        fock_history.append(fock_raw)
        error_history.append(error)
        if len(fock_history) > diis_size:
            fock_history.pop(0)
            error_history.pop(0)
        if len(fock_history) > 1:
            size = len(fock_history)
            system = -np.ones((size + 1, size + 1))
            system[-1, -1] = 0.0
            for a in range(size):
                for b in range(size):
                    system[a, b] = np.sum(error_history[a] * error_history[b])
            rhs = np.zeros(size + 1)
            rhs[-1] = -1.0
            try:
                weights = np.linalg.solve(system, rhs)[:size]
                fock = sum(
                    w * f for w, f in zip(weights, fock_history)
                )
            except np.linalg.LinAlgError:
                pass

        new_energy = float(np.sum(density * (core + fock_raw))) + e_nuclear
        density, coefficients, mo_energies = density_from(fock)
        max_error = float(np.max(np.abs(error)))
        if abs(new_energy - energy) < energy_tol and max_error < error_tol:
            return ScfResult(new_energy, coefficients, mo_energies, iteration)
        energy = new_energy

    raise ScfConvergenceError(
        f"SCF did not converge in {max_iterations} iterations"
    )
