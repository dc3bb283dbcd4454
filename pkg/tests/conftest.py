"""Shared high-precision oracles, independent of the package internals.

Every frozen reference value in the tests comes from one of these routes:
arbitrary-precision bisection of the quantization condition (mpmath),
numerical quadrature, or finite differences.  The oracles re-derive the
physics from the defining equation sin(w) sin(Nw) = z w sin((N+1)w) with
their own window bookkeeping, so agreement with the package is a real
cross-check, not a tautology.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from typing import Tuple

import mpmath as mp
import pytest


def bracketing_poles(N: int, kappa: Fraction) -> Tuple[Fraction, Fraction]:
    """Free-spectrum poles k = h/(N+1), (N+1) does not divide h, around kappa."""
    m = Fraction(kappa) * (N + 1)
    lo = math.floor(m)
    if lo == m:
        lo -= 1
    while lo % (N + 1) == 0:
        lo -= 1
    hi = math.floor(m) + 1
    while hi % (N + 1) == 0:
        hi += 1
    return Fraction(lo, N + 1), Fraction(hi, N + 1)


def oracle_root(N: int, z: float, kappa, dps: int = 40) -> float:
    """Momentum of the level continuing kappa = s/N at coupling z.

    Scans the pole window of kappa with an entire-function form of the
    quantization condition and bisects every sign change at high precision;
    exactly one root must appear.  Returns the float-rounded momentum.
    """
    kappa = Fraction(kappa)
    lo_k, hi_k = bracketing_poles(N, kappa)
    with mp.workdps(dps):
        zm = mp.mpf(z)
        pi = mp.pi

        def g(w):
            return mp.sin(w) * mp.sin(N * w) - zm * w * mp.sin((N + 1) * w)

        center = pi * kappa.numerator / kappa.denominator
        # g shares the zero of sin(w) sin(Nw) at w = pi*kappa, so restrict
        # the scan to the open side interval the level moves into: below
        # kappa for z < 0 (toward the lower pole), above for z > 0
        if z > 0:
            lo, hi = center, pi * hi_k.numerator / hi_k.denominator
        else:
            lo, hi = pi * lo_k.numerator / lo_k.denominator, center
        width = hi - lo
        # cluster sample points toward both ends: the root hugs the pole at
        # strong coupling and hugs kappa at weak coupling
        ts = sorted(
            {mp.mpf(i) / 128 for i in range(1, 128)}
            | {mp.mpf(10) ** -e for e in range(2, 16)}
            | {1 - mp.mpf(10) ** -e for e in range(2, 16)}
        )
        points = [lo + width * t for t in ts]
        signs = [mp.sign(g(w)) for w in points]
        brackets = [
            (points[i], points[i + 1])
            for i in range(len(points) - 1)
            if signs[i] != 0 and signs[i + 1] != 0 and signs[i] != signs[i + 1]
        ]
        if len(brackets) != 1:
            raise AssertionError(
                f"oracle found {len(brackets)} brackets for N={N}, z={z}, kappa={kappa}"
            )
        a, b = brackets[0]
        fa = g(a)
        for _ in range(dps * 4):
            mid = (a + b) / 2
            fm = g(mid)
            if fm == 0:
                a = b = mid
                break
            if mp.sign(fm) == mp.sign(fa):
                a, fa = mid, fm
            else:
                b = mid
        return float((a + b) / 2 / pi)


def oracle_root_n1(n: int, z: float, dps: int = 40) -> float:
    """Equal-cavity (N=1) oracle via the reduced form tan(w) = 2 z w.

    Independent second route for N=1: bisects sin(w) - 2 z w cos(w) on the
    half-window the level moves into, entirely separate from the windowed
    scan in :func:`oracle_root`.
    """
    if z == 0:
        return float(n)
    with mp.workdps(dps):
        zm = mp.mpf(z)
        pi = mp.pi

        def g(w):
            return mp.sin(w) - 2 * zm * w * mp.cos(w)

        if z > 0:
            a, b = n * pi + mp.mpf(10) ** -dps, (n + mp.mpf(1) / 2) * pi - mp.mpf(10) ** -dps
        else:
            a, b = (n - mp.mpf(1) / 2) * pi + mp.mpf(10) ** -dps, n * pi - mp.mpf(10) ** -dps
        fa = g(a)
        assert mp.sign(fa) != mp.sign(g(b))
        for _ in range(dps * 4):
            mid = (a + b) / 2
            fm = g(mid)
            if fm == 0:
                a = b = mid
                break
            if mp.sign(fm) == mp.sign(fa):
                a, fa = mid, fm
            else:
                b = mid
        return float((a + b) / 2 / pi)


@pytest.fixture
def rng() -> random.Random:
    """Deterministic RNG; reseed per test via rng.seed(...) when needed."""
    return random.Random(20240817)
