"""Molecular integrals over contracted Cartesian Gaussians.

McMurchie-Davidson scheme: Cartesian overlap distributions are expanded in
Hermite Gaussians (E coefficients), Coulomb integrals reduce to the
Hermite integral tensor R built on the Boys function.  Covers any angular
momentum the recursions reach; here s and p shells are exercised.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np
from scipy import special

from .basis import BasisFunction


def boys(n: int, x: float) -> float:
    """Boys function F_n(x) = integral_0^1 t^(2n) exp(-x t^2) dt."""

    if x < 1e-10:
        # Short Taylor series around zero; enough for full precision here.
        return (
            1.0 / (2 * n + 1)
            - x / (2 * n + 3)
            + 0.5 * x * x / (2 * n + 5)
            - x * x * x / (6.0 * (2 * n + 7))
        )
    a = n + 0.5
    return float(special.gammainc(a, x) * special.gamma(a) / (2.0 * x**a))


@lru_cache(maxsize=None)
def hermite_expansion(
    i: int, j: int, t: int, distance: float, a: float, b: float
) -> float:
    """Hermite expansion coefficient E_t^{ij} for a 1-D Gaussian product.

    ``distance`` is the center separation A - B along this axis.
    """

    p = a + b
    q = a * b / p
    if t < 0 or t > i + j:
        return 0.0
    if i == j == t == 0:
        return math.exp(-q * distance * distance)
    if j == 0:
        return (
            hermite_expansion(i - 1, j, t - 1, distance, a, b) / (2 * p)
            - q * distance / a * hermite_expansion(i - 1, j, t, distance, a, b)
            + (t + 1) * hermite_expansion(i - 1, j, t + 1, distance, a, b)
        )
    return (
        hermite_expansion(i, j - 1, t - 1, distance, a, b) / (2 * p)
        + q * distance / b * hermite_expansion(i, j - 1, t, distance, a, b)
        + (t + 1) * hermite_expansion(i, j - 1, t + 1, distance, a, b)
    )


@lru_cache(maxsize=None)
def hermite_coulomb(
    t: int, u: int, v: int, n: int, p: float,
    dx: float, dy: float, dz: float,
) -> float:
    """Hermite Coulomb integral R^n_{tuv} over the Boys function."""

    if t == u == v == 0:
        r2 = dx * dx + dy * dy + dz * dz
        return (-2.0 * p) ** n * boys(n, p * r2)
    if t == u == 0:
        value = dz * hermite_coulomb(t, u, v - 1, n + 1, p, dx, dy, dz)
        if v > 1:
            value += (v - 1) * hermite_coulomb(t, u, v - 2, n + 1, p, dx, dy, dz)
        return value
    if t == 0:
        value = dy * hermite_coulomb(t, u - 1, v, n + 1, p, dx, dy, dz)
        if u > 1:
            value += (u - 1) * hermite_coulomb(t, u - 2, v, n + 1, p, dx, dy, dz)
        return value
    value = dx * hermite_coulomb(t - 1, u, v, n + 1, p, dx, dy, dz)
    if t > 1:
        value += (t - 1) * hermite_coulomb(t - 2, u, v, n + 1, p, dx, dy, dz)
    return value


def clear_caches() -> None:
    hermite_expansion.cache_clear()
    hermite_coulomb.cache_clear()


def _overlap_prim(a, powers_a, center_a, b, powers_b, center_b) -> float:
    p = a + b
    value = (math.pi / p) ** 1.5
    for axis in range(3):
        value *= hermite_expansion(
            powers_a[axis], powers_b[axis], 0,
            center_a[axis] - center_b[axis], a, b,
        )
    return value


def _kinetic_prim(a, powers_a, center_a, b, powers_b, center_b) -> float:
    l2, m2, n2 = powers_b

    def shifted(dl, dm, dn):
        powers = (l2 + dl, m2 + dm, n2 + dn)
        if min(powers) < 0:
            return 0.0
        return _overlap_prim(a, powers_a, center_a, b, powers, center_b)

    term0 = b * (2 * (l2 + m2 + n2) + 3) * shifted(0, 0, 0)
    term1 = -2.0 * b * b * (
        shifted(2, 0, 0) + shifted(0, 2, 0) + shifted(0, 0, 2)
    )
    term2 = -0.5 * (
        l2 * (l2 - 1) * shifted(-2, 0, 0)
        + m2 * (m2 - 1) * shifted(0, -2, 0)
        + n2 * (n2 - 1) * shifted(0, 0, -2)
    )
    return term0 + term1 + term2


def _nuclear_prim(
    a, powers_a, center_a, b, powers_b, center_b, nucleus
) -> float:
    p = a + b
    composite = tuple(
        (a * center_a[axis] + b * center_b[axis]) / p for axis in range(3)
    )
    dx, dy, dz = (composite[axis] - nucleus[axis] for axis in range(3))
    value = 0.0
    for t in range(powers_a[0] + powers_b[0] + 1):
        e_x = hermite_expansion(
            powers_a[0], powers_b[0], t, center_a[0] - center_b[0], a, b
        )
        for u in range(powers_a[1] + powers_b[1] + 1):
            e_y = hermite_expansion(
                powers_a[1], powers_b[1], u, center_a[1] - center_b[1], a, b
            )
            for v in range(powers_a[2] + powers_b[2] + 1):
                e_z = hermite_expansion(
                    powers_a[2], powers_b[2], v, center_a[2] - center_b[2], a, b
                )
                value += e_x * e_y * e_z * hermite_coulomb(
                    t, u, v, 0, p, dx, dy, dz
                )
    return 2.0 * math.pi / p * value


def _eri_prim(
    a, powers_a, center_a, b, powers_b, center_b,
    c, powers_c, center_c, d, powers_d, center_d,
) -> float:
    p = a + b
    q = c + d
    alpha = p * q / (p + q)
    composite_p = tuple(
        (a * center_a[axis] + b * center_b[axis]) / p for axis in range(3)
    )
    composite_q = tuple(
        (c * center_c[axis] + d * center_d[axis]) / q for axis in range(3)
    )
    dx, dy, dz = (composite_p[axis] - composite_q[axis] for axis in range(3))

    value = 0.0
    for t in range(powers_a[0] + powers_b[0] + 1):
        e1x = hermite_expansion(
            powers_a[0], powers_b[0], t, center_a[0] - center_b[0], a, b
        )
        for u in range(powers_a[1] + powers_b[1] + 1):
            e1y = hermite_expansion(
                powers_a[1], powers_b[1], u, center_a[1] - center_b[1], a, b
            )
            for v in range(powers_a[2] + powers_b[2] + 1):
                e1z = hermite_expansion(
                    powers_a[2], powers_b[2], v, center_a[2] - center_b[2], a, b
                )
                e1 = e1x * e1y * e1z
                if e1 == 0.0:
                    continue
                for tau in range(powers_c[0] + powers_d[0] + 1):
                    e2x = hermite_expansion(
                        powers_c[0], powers_d[0], tau,
                        center_c[0] - center_d[0], c, d,
                    )
                    for nu in range(powers_c[1] + powers_d[1] + 1):
                        e2y = hermite_expansion(
                            powers_c[1], powers_d[1], nu,
                            center_c[1] - center_d[1], c, d,
                        )
                        for phi in range(powers_c[2] + powers_d[2] + 1):
                            e2z = hermite_expansion(
                                powers_c[2], powers_d[2], phi,
                                center_c[2] - center_d[2], c, d,
                            )
                            e2 = e2x * e2y * e2z
                            if e2 == 0.0:
                                continue
                            sign = -1.0 if (tau + nu + phi) & 1 else 1.0
                            value += e1 * e2 * sign * hermite_coulomb(
                                t + tau, u + nu, v + phi, 0, alpha, dx, dy, dz
                            )
    return value * 2.0 * math.pi**2.5 / (p * q * math.sqrt(p + q))


def _contract_pair(func, bf_a: BasisFunction, bf_b: BasisFunction) -> float:
    value = 0.0
    for a, ca in zip(bf_a.exponents, bf_a.coefficients):
        for b, cb in zip(bf_b.exponents, bf_b.coefficients):
            value += ca * cb * func(
                a, bf_a.powers, bf_a.center, b, bf_b.powers, bf_b.center
            )
    return value


def overlap_matrix(basis: list[BasisFunction]) -> np.ndarray:
    n = len(basis)
    matrix = np.zeros((n, n))
    for i in range(n):
        for j in range(i, n):
            matrix[i, j] = matrix[j, i] = _contract_pair(
                _overlap_prim, basis[i], basis[j]
            )
    return matrix


def kinetic_matrix(basis: list[BasisFunction]) -> np.ndarray:
    n = len(basis)
    matrix = np.zeros((n, n))
    for i in range(n):
        for j in range(i, n):
            matrix[i, j] = matrix[j, i] = _contract_pair(
                _kinetic_prim, basis[i], basis[j]
            )
    return matrix


def nuclear_attraction_matrix(
    basis: list[BasisFunction],
    nuclei: list[tuple[float, tuple[float, float, float]]],
) -> np.ndarray:
    """Electron-nucleus attraction; ``nuclei`` holds (charge, center)."""

    n = len(basis)
    matrix = np.zeros((n, n))
    for i in range(n):
        for j in range(i, n):
            value = 0.0
            for charge, center in nuclei:
                term = 0.0
                for a, ca in zip(basis[i].exponents, basis[i].coefficients):
                    for b, cb in zip(basis[j].exponents, basis[j].coefficients):
                        term += ca * cb * _nuclear_prim(
                            a, basis[i].powers, basis[i].center,
                            b, basis[j].powers, basis[j].center,
                            center,
                        )
                value -= charge * term
            matrix[i, j] = matrix[j, i] = value
    return matrix


def eri_tensor(basis: list[BasisFunction]) -> np.ndarray:
    """Two-electron repulsion integrals (ij|kl), chemist notation, with
    8-fold permutational symmetry filled in."""

    n = len(basis)
    eri = np.zeros((n, n, n, n))
    for i in range(n):
        for j in range(i + 1):
            for k in range(n):
                for l in range(k + 1):
                    if (i * (i + 1)) // 2 + j < (k * (k + 1)) // 2 + l:
                        continue
                    value = 0.0
                    bi, bj, bk, bl = basis[i], basis[j], basis[k], basis[l]
                    for a, ca in zip(bi.exponents, bi.coefficients):
                        for b, cb in zip(bj.exponents, bj.coefficients):
                            for c, cc in zip(bk.exponents, bk.coefficients):
                                for d, cd in zip(bl.exponents, bl.coefficients):
                                    value += ca * cb * cc * cd * _eri_prim(
                                        a, bi.powers, bi.center,
                                        b, bj.powers, bj.center,
                                        c, bk.powers, bk.center,
                                        d, bl.powers, bl.center,
                                    )
                    for p, q in ((i, j), (j, i)):
                        for r, s in ((k, l), (l, k)):
                            eri[p, q, r, s] = value
                            eri[r, s, p, q] = value
    return eri


def nuclear_repulsion(
    nuclei: list[tuple[float, tuple[float, float, float]]]
) -> float:
    energy = 0.0
    for i in range(len(nuclei)):
        for j in range(i + 1, len(nuclei)):
            zi, ri = nuclei[i]
            zj, rj = nuclei[j]
            distance = math.dist(ri, rj)
            energy += zi * zj / distance
    return energy
