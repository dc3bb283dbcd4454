"""Reduction of tan(N w) to a degree-N rational function of tan(w).

tan(N w) = t P(t^2) / Q(t^2) with t = tan(w), where P and Q carry alternating
binomial coefficients.  On top of it sits S_N(t) = t R_N(t) / (t + R_N(t)),
the left-hand side of the polynomialized spectral condition S_N(tan w) = z w.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple, Union

Value = Union[float, complex]

_MAX_N = 16  # binomials stay exact in 64-bit integers well past this point


class TangentPoleError(ArithmeticError):
    """Evaluation requested at (or too near) a pole of the rational function.

    Tagged separately from overflow so bracketing code can tell a true pole
    from a merely large value.
    """


@dataclass(frozen=True)
class RationalTanReduction:
    """Exact integer coefficient tables for tan(N w) = t P(t^2)/Q(t^2).

    p_coeffs[r] = (-1)^r C(N, 2r+1) and q_coeffs[r] = (-1)^r C(N, 2r),
    stored in ascending powers of t^2.
    """

    N: int
    p_coeffs: Tuple[int, ...]
    q_coeffs: Tuple[int, ...]

    @property
    def numerator_degree(self) -> int:
        return 2 * (len(self.p_coeffs) - 1) + 1

    @property
    def denominator_degree(self) -> int:
        return 2 * (len(self.q_coeffs) - 1)


def build_reduction(N: int) -> RationalTanReduction:
    """Exact coefficient tables for 1 <= N <= 16."""
    if not (1 <= N <= _MAX_N):
        raise ValueError(f"tangent reduction supports 1 <= N <= {_MAX_N}, got {N}")
    p = tuple(
        (-1) ** r * math.comb(N, 2 * r + 1) for r in range((N - 1) // 2 + 1)
    )
    q = tuple((-1) ** r * math.comb(N, 2 * r) for r in range(N // 2 + 1))
    return RationalTanReduction(N=N, p_coeffs=p, q_coeffs=q)


def _horner_even(coeffs: Tuple[int, ...], t2: Value) -> Value:
    acc: Value = 0.0
    for c in reversed(coeffs):
        acc = acc * t2 + c
    return acc


# relative pole margin in t-space; inside it evaluation raises TangentPoleError
_POLE_MARGIN = 1e-13


def tan_multiple(N: int, t: Value) -> Value:
    """Evaluates tan(N w) as R_N(t) for t = tan(w), by Horner on P and Q.

    Near a zero of Q (relative margin 1e-13 on the Horner value) the pole is
    reported as :class:`TangentPoleError`, never as an overflowing float.
    """
    red = build_reduction(N)
    t2 = t * t
    num = t * _horner_even(red.p_coeffs, t2)
    den = _horner_even(red.q_coeffs, t2)
    scale = _horner_even(tuple(abs(c) for c in red.q_coeffs), abs(t2))
    if abs(den) <= _POLE_MARGIN * max(1.0, abs(scale)):
        raise TangentPoleError(f"tan({N} w) pole at tan(w) = {t}")
    return num / den


def s_function(N: int, t: Value) -> Value:
    """S_N(t) = t R_N(t)/(t + R_N(t)) = t P/(P + Q), in polynomialized form.

    The P + Q form avoids evaluating R_N at its own poles; the remaining
    singularity t + R_N(t) = 0 (i.e. P + Q = 0) is reported as a pole.
    """
    red = build_reduction(N)
    t2 = t * t
    p_val = _horner_even(red.p_coeffs, t2)
    q_val = _horner_even(red.q_coeffs, t2)
    den = p_val + q_val
    scale = _horner_even(tuple(abs(c) for c in red.p_coeffs), abs(t2)) + _horner_even(
        tuple(abs(c) for c in red.q_coeffs), abs(t2)
    )
    if abs(den) <= _POLE_MARGIN * max(1.0, abs(scale)):
        raise TangentPoleError(f"S_{N} pole at t = {t}")
    return t * p_val / den
