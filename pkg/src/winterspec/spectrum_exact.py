"""Exact momentum levels by root isolation of the quantization condition.

The normal spectrum solves h_N(w) = z with h_N(w) = sin(w) sin(Nw) /
(w sin((N+1)w)) and w = pi k.  Between two adjacent simple poles of h_N
there is exactly one free momentum s/N and exactly one root for every
z != 0, so every root is bracketed analytically before any numerics run.
Exceptional levels (integer k, coupling independent) are appended as exact
constants.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Tuple

from .core import (
    Kind,
    LevelIndex,
    NumericalError,
    cavity_length,
    classify_free_momentum,
    exceptional_levels,
)

# bracket width target in w = pi k units
_W_TOL = 1e-12
_K_TOL = _W_TOL / math.pi


class SpectralPoleError(ArithmeticError):
    """h_N evaluated exactly on (or within rounding of) one of its poles."""


def _pole_distance(N: int, k: float) -> float:
    """Distance of k*(N+1) from the nearest admissible pole integer."""
    m = k * (N + 1)
    h = round(m)
    if h % (N + 1) == 0:
        return math.inf  # excluded lattice point: a zero of h_N, not a pole
    return abs(m - h)


def h_function(N: int, w: float) -> float:
    """h_N(w) = sin(w) sin(Nw) / (w sin((N+1)w)); the condition is h_N = z.

    Evaluation within ~4 ulp of a pole raises :class:`SpectralPoleError`
    instead of returning an arbitrarily large float.
    """
    if N < 1:
        raise ValueError(f"cavity ratio N must be >= 1, got {N}")
    if w <= 0:
        raise ValueError(f"h_N is defined for w > 0, got {w}")
    k = w / math.pi
    m = k * (N + 1)
    if _pole_distance(N, k) <= 4.0 * math.ulp(max(1.0, abs(m))):
        raise SpectralPoleError(f"h_{N} pole at w = {w}")
    return math.sin(w) * math.sin(N * w) / (w * math.sin((N + 1) * w))


@dataclass(frozen=True)
class SpectralWindow:
    """Pole and zero lattices of h_N below a momentum ceiling.

    Poles sit at w = pi h/(N+1) with h not a multiple of N+1; zeros at the
    free momenta w = pi s/N.  Exact k-unit fractions are kept alongside the
    float w grids; poles and zeros strictly alternate.
    """

    N: int
    w_max: float
    poles_k: Tuple[Fraction, ...]
    zeros_k: Tuple[Fraction, ...]

    @property
    def pole_grid(self) -> Tuple[float, ...]:
        return tuple(math.pi * float(f) for f in self.poles_k)

    @property
    def zero_grid(self) -> Tuple[float, ...]:
        return tuple(math.pi * float(f) for f in self.zeros_k)


def spectral_window(N: int, w_max: float) -> SpectralWindow:
    if N < 1:
        raise ValueError(f"cavity ratio N must be >= 1, got {N}")
    if w_max <= 0:
        raise ValueError("w_max must be positive")
    k_max = w_max / math.pi
    poles: List[Fraction] = []
    h = 1
    while True:
        f = Fraction(h, N + 1)
        if float(f) > k_max:
            break
        if h % (N + 1) != 0:
            poles.append(f)
        h += 1
    zeros: List[Fraction] = []
    s = 1
    while True:
        f = Fraction(s, N)
        if float(f) > k_max:
            break
        zeros.append(f)
        s += 1
    return SpectralWindow(N=N, w_max=w_max, poles_k=tuple(poles), zeros_k=tuple(zeros))


def _adjacent_poles(N: int, kappa: Fraction) -> Tuple[Fraction, Fraction]:
    """The two admissible poles bracketing the free momentum kappa."""
    m = kappa * (N + 1)
    lo = int(m) if m.denominator > 1 else int(m) - 1
    while lo % (N + 1) == 0 or Fraction(lo, N + 1) >= kappa:
        lo -= 1
    hi = lo + 1
    while hi % (N + 1) == 0 or Fraction(hi, N + 1) <= kappa:
        hi += 1
    return Fraction(lo, N + 1), Fraction(hi, N + 1)


def _h_shifted(N: int, z: float) -> Callable[[float], float]:
    def f(k: float) -> float:
        w = math.pi * k
        return math.sin(w) * math.sin(N * w) / (w * math.sin((N + 1) * w)) - z

    return f


# sign-scan layout inside each bracket: uniform interior plus geometric
# tails toward both poles, catching roots pushed within 1e-13 of a pole
_TAIL_EXPONENTS = tuple(range(2, 14))
_UNIFORM_POINTS = 64


def _scan_points(a: float, b: float) -> List[float]:
    width = b - a
    pts = {a + width * i / (_UNIFORM_POINTS + 1) for i in range(1, _UNIFORM_POINTS + 1)}
    for e in _TAIL_EXPONENTS:
        off = width * 10.0 ** (-e)
        pts.add(a + off)
        pts.add(b - off)
    return sorted(p for p in pts if a < p < b)


def _refine(
    f: Callable[[float], float], lo: float, hi: float, f_lo: float, f_hi: float
) -> float:
    """Safeguarded bisection/secant refinement of a sign-change bracket."""
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if math.copysign(1.0, f_lo) == math.copysign(1.0, f_hi):
        raise NumericalError("refinement called without a sign change")
    for step in range(200):
        width = hi - lo
        # converge to the arithmetic limit; every other step is a guaranteed
        # bisection, so the 200-step budget is ample for ulp-width brackets
        if width <= 2.0 * math.ulp(max(abs(lo), abs(hi))):
            return 0.5 * (lo + hi)
        mid = 0.5 * (lo + hi)
        x = mid
        if step % 2 == 0 and f_hi != f_lo:
            # secant proposal, accepted only well inside the bracket
            cand = hi - f_hi * (hi - lo) / (f_hi - f_lo)
            margin = 0.01 * width
            if lo + margin < cand < hi - margin:
                x = cand
        fx = f(x)
        if math.isnan(fx):
            raise NumericalError(f"bracket refinement stalled at k = {x}")
        if fx == 0.0:
            return x
        if math.copysign(1.0, fx) == math.copysign(1.0, f_lo):
            lo, f_lo = x, fx
        else:
            hi, f_hi = x, fx
    raise NumericalError("bracket refinement did not converge")


def _root_in_window(N: int, z: float, kappa: Fraction) -> float:
    """The unique root of h_N = z between the poles adjacent to kappa."""
    lo_f, hi_f = _adjacent_poles(N, kappa)
    a, b = float(lo_f), float(hi_f)
    f = _h_shifted(N, z)
    pts = _scan_points(a, b)
    vals = [f(p) for p in pts]
    brackets: List[Tuple[float, float, float, float]] = []
    for (p0, v0), (p1, v1) in zip(zip(pts, vals), zip(pts[1:], vals[1:])):
        if math.isnan(v0) or math.isnan(v1):
            raise NumericalError(f"NaN while scanning window around k = {kappa}")
        if v0 == 0.0:
            return p0
        if math.copysign(1.0, v0) != math.copysign(1.0, v1):
            brackets.append((p0, p1, v0, v1))
    if vals and vals[-1] == 0.0:
        return pts[-1]
    if not brackets:
        raise NumericalError(
            f"no sign change for level k_{kappa} at z = {z}; root not bracketed"
        )
    roots = [_refine(f, *br) for br in brackets]
    distinct = [roots[0]]
    for r in roots[1:]:
        if abs(r - distinct[-1]) > 10.0 * _K_TOL:
            distinct.append(r)
    if len(distinct) > 1:
        raise NumericalError(
            f"unmatched root count in window around k_{kappa} at z = {z}: "
            f"{len(distinct)} roots where exactly one is expected"
        )
    return distinct[0]


def exact_level(N: int, z: float, index: LevelIndex) -> float:
    """Momentum of one labeled level at coupling z (exceptional: exactly n)."""
    if index.N != N:
        raise ValueError("level index built for a different N")
    if index.kind is Kind.EXCEPTIONAL:
        return float(index.n)
    if z == 0:
        raise ValueError("z = 0 is the analytic free limit, not a root target")
    return _root_in_window(N, z, index.free_momentum)


def exact_levels(N: int, z: float, k_max: float) -> List[Tuple[LevelIndex, float]]:
    """All normal levels with 0 < k < k_max at coupling z, plus exceptionals.

    Each root is isolated between the two poles adjacent to its free
    momentum s/N, so labels are attached by construction and can never
    permute; exceptional levels k = 1, 2, ... are appended afterwards.
    """
    if z == 0:
        raise ValueError("z = 0 is the analytic free limit, not a root target")
    if not (k_max >= 1):
        raise ValueError(f"k_max must be >= 1, got {k_max}")
    out: List[Tuple[LevelIndex, float]] = []
    s = 1
    while True:
        kappa = Fraction(s, N)
        lo_f, _ = _adjacent_poles(N, kappa)
        if float(lo_f) >= k_max:
            break
        k = _root_in_window(N, z, kappa)
        if k < k_max:
            out.append((classify_free_momentum(N, s), k))
        s += 1
    for idx in exceptional_levels(N, k_max):
        out.append((idx, float(idx.n)))
    return out


def eigenfunction(N: int, k: float, x: float) -> float:
    """Normalized position-space eigenfunction of the level with momentum k.

    Non-integer k uses the two-piece normal form, continuous across the
    barrier at x = pi; integer k is routed to the exceptional form
    sqrt(2/L) sin(n x), which vanishes at the barrier.
    """
    if N < 1:
        raise ValueError(f"cavity ratio N must be >= 1, got {N}")
    if k <= 0:
        raise ValueError("momentum must be positive")
    L = cavity_length(N)
    if not (0.0 <= x <= L):
        raise ValueError(f"position {x} outside the segment [0, {L}]")
    if k == round(k):
        return math.sqrt(2.0 / L) * math.sin(k * x)
    s_small = math.sin(math.pi * k)
    s_big = math.sin(math.pi * N * k)
    norm2 = s_big * s_big * (math.pi / 2.0 - math.sin(2.0 * math.pi * k) / (4.0 * k)) + (
        s_small * s_small
    ) * (math.pi * N / 2.0 - math.sin(2.0 * math.pi * N * k) / (4.0 * k))
    norm = 1.0 / math.sqrt(norm2)
    if x <= math.pi:
        return norm * s_big * math.sin(k * x)
    return norm * s_small * math.sin(k * (L - x))


def dk_dz(N: int, z: float, k: float) -> float:
    """Closed-form slope dk/dz along a normal level through (z, k).

    Singular at z = 0 (every level meets an exceptional one there) and at
    integer k, where the level itself cannot sit for finite coupling.
    """
    if z == 0:
        raise ValueError("dk/dz is singular at z = 0")
    if k == round(k):
        raise ValueError("dk/dz undefined at integer momentum")
    w = math.pi * k
    csc1 = 1.0 / math.sin(w)
    cscN = 1.0 / math.sin(N * w)
    bracket = z * w * w * (csc1 * csc1 + N * cscN * cscN) - 1.0
    return k / (z * bracket)
