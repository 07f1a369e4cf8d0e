"""STO-3G basis data and contracted Gaussian construction.

Exponents and contraction coefficients are the standard STO-3G values;
coefficients refer to unit-normalized primitives, so each primitive's
normalization constant is folded into its coefficient at build time.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

# element -> list of shells; "S" rows are (exponent, c_s),
# "SP" rows are (exponent, c_s, c_p).
STO3G = {
    "H": [
        ("S", [
            (3.42525091, 0.15432897),
            (0.62391373, 0.53532814),
            (0.16885540, 0.44463454),
        ]),
    ],
    "Li": [
        ("S", [
            (16.1195750, 0.15432897),
            (2.9362007, 0.53532814),
            (0.7946505, 0.44463454),
        ]),
        ("SP", [
            (0.6362897, -0.09996723, 0.15591627),
            (0.1478601, 0.39951283, 0.60768372),
            (0.0480887, 0.70011547, 0.39195739),
        ]),
    ],
}

NUCLEAR_CHARGE = {"H": 1, "Li": 3}


@dataclass(frozen=True)
class BasisFunction:
    """One contracted Cartesian Gaussian.

    ``powers`` holds the (l, m, n) monomial exponents; ``coefficients``
    already include primitive normalization.
    """

    center: tuple[float, float, float]
    powers: tuple[int, int, int]
    exponents: tuple[float, ...]
    coefficients: tuple[float, ...]


def _double_factorial(value: int) -> int:
    result = 1
    while value > 1:
        result *= value
        value -= 2
    return result


def primitive_norm(exponent: float, powers: tuple[int, int, int]) -> float:
    l, m, n = powers
    total = l + m + n
    return (
        (2.0 * exponent / math.pi) ** 0.75
        * (4.0 * exponent) ** (total / 2.0)
        / math.sqrt(
            _double_factorial(2 * l - 1)
            * _double_factorial(2 * m - 1)
            * _double_factorial(2 * n - 1)
        )
    )


def build_basis(
    atoms: list[tuple[str, tuple[float, float, float]]]
) -> list[BasisFunction]:
    """Expand atoms (symbol, center in Bohr) into basis functions.

    Shell order follows the element table; SP shells contribute the s
    function then px, py, pz.
    """

    functions: list[BasisFunction] = []
    for symbol, center in atoms:
        if symbol not in STO3G:
            raise ValueError(
                f"no STO-3G parameters for element {symbol!r}; "
                f"available: {sorted(STO3G)}"
            )
        for shell_kind, rows in STO3G[symbol]:
            exponents = tuple(row[0] for row in rows)
            if shell_kind == "S":
                functions.append(
                    _contracted(center, (0, 0, 0), exponents,
                                tuple(row[1] for row in rows))
                )
            elif shell_kind == "SP":
                functions.append(
                    _contracted(center, (0, 0, 0), exponents,
                                tuple(row[1] for row in rows))
                )
                p_coeffs = tuple(row[2] for row in rows)
                for powers in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
                    functions.append(
                        _contracted(center, powers, exponents, p_coeffs)
                    )
            else:
                raise ValueError(f"unsupported shell kind {shell_kind!r}")
    return functions


def _contracted(center, powers, exponents, coefficients) -> BasisFunction:
    normalized = tuple(
        coeff * primitive_norm(exp, powers)
        for exp, coeff in zip(exponents, coefficients)
    )
    return BasisFunction(tuple(center), tuple(powers), tuple(exponents), normalized)
