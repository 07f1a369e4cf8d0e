"""Full CI by direct construction in a spin-orbital determinant basis.

The Hamiltonian is applied as second-quantized ladder operators acting on
occupation bitmasks, which sidesteps Slater-Condon case analysis; the
determinant spaces here are tiny (225 for 4 electrons in 12 spin
orbitals), so a dense eigensolve finishes instantly.

Spin orbitals interleave spatial orbitals: index 2p is the alpha spin of
spatial orbital p and 2p + 1 the beta spin.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np


def spin_orbital_integrals(
    core_mo: np.ndarray, eri_mo: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """One-body h[P,Q] and antisymmetrized-ready <PQ|RS> in spin orbitals.

    Returns ``(one_body, two_body)`` where ``two_body[P,Q,R,S]`` is the
    physicist-notation matrix element <PQ|RS> with spin deltas applied.
    """

    n_spatial = core_mo.shape[0]
    n = 2 * n_spatial
    one_body = np.zeros((n, n))
    two_body = np.zeros((n, n, n, n))
    for p in range(n_spatial):
        for q in range(n_spatial):
            one_body[2 * p, 2 * q] = core_mo[p, q]
            one_body[2 * p + 1, 2 * q + 1] = core_mo[p, q]
    for p in range(n_spatial):
        for q in range(n_spatial):
            for r in range(n_spatial):
                for s in range(n_spatial):
                    # <PQ|RS> = (pr|qs) with spin(P)=spin(R), spin(Q)=spin(S).
                    value = eri_mo[p, r, q, s]
                    for sigma in (0, 1):
                        for tau in (0, 1):
                            two_body[
                                2 * p + sigma, 2 * q + tau,
                                2 * r + sigma, 2 * s + tau,
                            ] = value
    return one_body, two_body


def _apply_ladder(mask: int, index: int, create: bool) -> tuple[int, int] | None:
    """Apply a_index^dagger (or a_index) to an occupation bitmask.

    Returns (sign, new_mask) or None when the operator annihilates the
    state.  The sign counts occupied modes below ``index``.
    """

    bit = 1 << index
    if create:
        if mask & bit:
            return None
        new_mask = mask | bit
    else:
        if not mask & bit:
            return None
        new_mask = mask & ~bit
    parity = bin(mask & (bit - 1)).count("1")
    return (-1 if parity & 1 else 1), new_mask


def determinant_basis(
    n_spatial: int, n_alpha: int, n_beta: int
) -> list[int]:
    """All occupation bitmasks with the given per-spin electron counts."""

    masks = []
    for alphas in combinations(range(n_spatial), n_alpha):
        alpha_mask = sum(1 << (2 * p) for p in alphas)
        for betas in combinations(range(n_spatial), n_beta):
            beta_mask = sum(1 << (2 * p + 1) for p in betas)
            masks.append(alpha_mask | beta_mask)
    return masks


def fci_ground_energy(
    core_mo: np.ndarray,
    eri_mo: np.ndarray,
    n_electrons: int,
    e_nuclear: float,
    *,
    n_alpha: int | None = None,
) -> float:
    """Lowest eigenvalue in the (n_alpha, n_beta) determinant sector."""

    if n_alpha is None:
        if n_electrons % 2 != 0:
            raise ValueError("specify n_alpha for open-shell electron counts")
        n_alpha = n_electrons // 2
    n_beta = n_electrons - n_alpha
    matrix = build_ci_matrix(core_mo, eri_mo, n_alpha, n_beta)
    return float(np.linalg.eigvalsh(matrix)[0]) + e_nuclear


def build_ci_matrix(
    core_mo: np.ndarray, eri_mo: np.ndarray, n_alpha: int, n_beta: int
) -> np.ndarray:
    """Hamiltonian (electronic part) over the determinant basis."""

    n_spatial = core_mo.shape[0]
    one_body, two_body = spin_orbital_integrals(core_mo, eri_mo)
    n_so = 2 * n_spatial
    basis = determinant_basis(n_spatial, n_alpha, n_beta)
    position = {mask: k for k, mask in enumerate(basis)}
    dim = len(basis)
    matrix = np.zeros((dim, dim))

    for column, mask in enumerate(basis):
        # One-body: h[P,Q] a+_P a_Q.
        for q in range(n_so):
            hit_q = _apply_ladder(mask, q, create=False)
            if hit_q is None:
                continue
            sign_q, mask_q = hit_q
            for p in range(q & 1, n_so, 2):  # spin-conserving only
                value = one_body[p, q]
                if value == 0.0:
                    continue
                hit_p = _apply_ladder(mask_q, p, create=True)
                if hit_p is None:
                    continue
                sign_p, mask_pq = hit_p
                matrix[position[mask_pq], column] += sign_q * sign_p * value

        # Two-body: (1/2) <PQ|RS> a+_P a+_Q a_S a_R.
        occupied = [k for k in range(n_so) if mask >> k & 1]
        for r in occupied:
            sign_r, mask_r = _apply_ladder(mask, r, create=False)
            for s in occupied:
                if s == r:
                    continue
                hit_s = _apply_ladder(mask_r, s, create=False)
                if hit_s is None:
                    continue
                sign_s, mask_rs = hit_s
                for q in range(s & 1, n_so, 2):
                    hit_q = _apply_ladder(mask_rs, q, create=True)
                    if hit_q is None:
                        continue
                    sign_q, mask_rsq = hit_q
                    for p in range(r & 1, n_so, 2):
                        value = two_body[p, q, r, s]
                        if value == 0.0:
                            continue
                        hit_p = _apply_ladder(mask_rsq, p, create=True)
                        if hit_p is None:
                            continue
                        sign_p, final_mask = hit_p
                        matrix[position[final_mask], column] += (
                            0.5 * sign_r * sign_s * sign_q * sign_p * value
                        )
    return matrix
