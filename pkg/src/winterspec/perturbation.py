"""Fixed-order perturbative momentum series around the free spectrum.

Every normal level leaves the free momentum kappa = n + l/N as an analytic
series k = kappa (1 + c1 g + c2 g^2 + ...) in the coupling g = -z.  The
coefficients through fifth order are closed-form in N, n, l; resonant
levels (l = 0) and non-resonant levels (l != 0) have structurally
different series, the latter carrying cot(pi l / N) factors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

from .core import Kind, LevelIndex

MAX_ORDER = 5

# cot(pi r) at the lattice fractions produced by canonical l/N; exact
# values avoid 1e-16 residue where the cotangent is 0 or algebraic
_COT_TABLE = {
    Fraction(1, 2): 0.0,
    Fraction(1, 4): 1.0,
    Fraction(3, 4): -1.0,
    Fraction(1, 3): 3.0 ** -0.5,
    Fraction(2, 3): -(3.0 ** -0.5),
    Fraction(1, 6): 3.0 ** 0.5,
    Fraction(5, 6): -(3.0 ** 0.5),
}


def _cot_pi(r: Fraction) -> float:
    """cot(pi r) for a fraction r with 0 < r < 1."""
    exact = _COT_TABLE.get(r)
    if exact is not None:
        return exact
    return 1.0 / math.tan(math.pi * float(r))


def resonant_coeffs(N: int, n: int) -> Tuple[float, float, float, float, float]:
    """Series coefficients c1..c5 of a resonant level k = n (1 + sum c_i g^i)."""
    if N < 1:
        raise ValueError(f"cavity ratio N must be >= 1, got {N}")
    if n < 1:
        raise ValueError(f"resonant levels require n >= 1, got {n}")
    a = 1.0 + 1.0 / N
    nu2 = (math.pi * n) ** 2
    c1 = -a
    c2 = a * a
    c3 = a ** 3 * (nu2 * N / 3.0 - 1.0)
    c4 = -(a ** 4) * (4.0 * nu2 * N / 3.0 - 1.0)
    c5 = (a ** 5 / 45.0) * (
        nu2 * nu2 * N ** 3
        - 11.0 * nu2 * nu2 * N ** 2
        + nu2 * (150.0 + nu2) * N
        - 45.0
    )
    return (c1, c2, c3, c4, c5)


def nonresonant_coeffs(N: int, n: int, l: int) -> Tuple[float, float, float, float, float]:
    """Series coefficients c1..c5 of a non-resonant level kappa = n + l/N."""
    if N < 2:
        raise ValueError("non-resonant levels exist only for N >= 2")
    if l % N == 0:
        raise ValueError(f"l = {l} is resonant modulo N = {N}")
    kap = float(n) + float(l) / N
    if kap <= 0:
        raise ValueError(f"free momentum must be positive, got {kap}")
    c = _cot_pi(Fraction(l, N) % 1)
    pi = math.pi
    iN = 1.0 / N
    kc = kap * c

    c1 = -iN
    c2 = (pi * iN) * kc + iN ** 2
    c3 = (
        -(pi ** 2 * iN) * (1.0 - iN) * kc ** 2
        - 3.0 * pi * iN ** 2 * kc
        + (pi ** 2 * iN / 3.0) * (1.0 + 3.0 * iN) * kap ** 2
        - iN ** 3
    )
    c4 = (
        (pi ** 3 * iN) * (1.0 - 3.0 * iN + iN ** 2) * kc ** 3
        + 2.0 * pi ** 2 * iN ** 2 * (3.0 - 2.0 * iN) * kc ** 2
        - pi * iN * (pi ** 2 * (1.0 + 3.0 * iN - iN ** 2) * kap ** 2 - 6.0 * iN ** 2) * kc
        - (4.0 * pi ** 2 * iN ** 2 / 3.0) * (1.0 + 3.0 * iN) * kap ** 2
        + iN ** 4
    )
    c5 = (
        -(pi ** 4 * iN) * (1.0 - 6.0 * iN + 6.0 * iN ** 2 - iN ** 3) * kc ** 4
        - 5.0 * pi ** 3 * iN ** 2 * (2.0 - 4.0 * iN + iN ** 2) * kc ** 3
        + 2.0
        * pi ** 2
        * iN
        * (
            (pi ** 2 / 3.0) * (3.0 + 7.0 * iN - 12.0 * iN ** 2 + 2.0 * iN ** 3) * kap ** 2
            - 5.0 * iN ** 2 * (2.0 - iN)
        )
        * kc ** 2
        + 5.0
        * pi
        * iN ** 2
        * ((pi ** 2 / 3.0) * (4.0 + 12.0 * iN - 3.0 * iN ** 2) * kap ** 2 - 2.0 * iN ** 2)
        * kc
        - (pi ** 4 * iN / 15.0) * (3.0 + 20.0 * iN + 30.0 * iN ** 2 - 5.0 * iN ** 3) * kap ** 4
        + (10.0 * pi ** 2 * iN ** 3 / 3.0) * (1.0 + 3.0 * iN) * kap ** 2
        - iN ** 5
    )
    return (c1, c2, c3, c4, c5)


@dataclass(frozen=True)
class PerturbativeCoefficients:
    """Frozen series data of one level: k = kappa (1 + sum_i coeffs[i-1] g^i)."""

    index: LevelIndex
    kappa: Fraction
    coeffs: Tuple[float, ...]

    def momentum(self, g: float, order: int = MAX_ORDER) -> float:
        if not 1 <= order <= len(self.coeffs):
            raise ValueError(f"order must be in 1..{len(self.coeffs)}, got {order}")
        acc = 0.0
        for c in reversed(self.coeffs[:order]):
            acc = (acc + c) * g
        return float(self.kappa) * (1.0 + acc)


def coefficients(index: LevelIndex) -> PerturbativeCoefficients:
    """Series coefficients of any level; exceptional levels are constant."""
    if index.kind is Kind.EXCEPTIONAL:
        coeffs: Tuple[float, ...] = (0.0,) * MAX_ORDER
    elif index.kind is Kind.RESONANT:
        coeffs = resonant_coeffs(index.N, index.n)
    else:
        coeffs = nonresonant_coeffs(index.N, index.n, index.l)
    return PerturbativeCoefficients(index=index, kappa=index.free_momentum, coeffs=coeffs)


def perturbative_momentum(index: LevelIndex, z: float, order: int = MAX_ORDER) -> float:
    """Momentum of a level at coupling z, series truncated at the given order.

    The series itself runs in g = -z; the sign flip happens here so every
    public entry point shares one coupling convention.
    """
    return coefficients(index).momentum(-z, order)
