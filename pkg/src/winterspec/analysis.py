"""Resonance diagnostics built on the exact spectrum.

The barrier-side to well-side amplitude ratio A_N(k) and the phase
phi_N(k) turn a momentum list into a resonance picture: A peaks at the
resonant momenta, the phase advances by pi across each peak, and the
level curves k(z) steepen near the critical couplings j/(nN) where the
resonance hops from one level label to the next.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Tuple

import numpy as np

from .core import LevelCurve, LevelIndex, NumericalError
from .spectrum_exact import dk_dz, exact_level

# snap tolerance for the amplitude lattice values (exact zeros and peaks)
_LATTICE_TOL = 1e-9


class PoleProximityError(NumericalError):
    """A resummed expression was evaluated too close to a critical coupling."""


def amplitude_ratio(N: int, k: float) -> float:
    """A_N(k) = |sin(pi N k) / sin(pi k)|, the two-region amplitude ratio.

    Integer k (a resonance peak) snaps to the exact limit N; momenta on
    the sin(pi N k) zero lattice snap to exactly 0.
    """
    if N < 1:
        raise ValueError(f"cavity ratio N must be >= 1, got {N}")
    if k <= 0:
        raise ValueError("momentum must be positive")
    if abs(k - round(k)) <= _LATTICE_TOL:
        return float(N)
    m = k * N
    if abs(m - round(m)) <= _LATTICE_TOL and round(m) % N != 0:
        return 0.0
    return abs(math.sin(math.pi * N * k) / math.sin(math.pi * k))


def phase_shift(N: int, k: float) -> float:
    """Scattering-style phase phi_N(k) = -pi (N+1) k, folded into [0, pi)."""
    if N < 1:
        raise ValueError(f"cavity ratio N must be >= 1, got {N}")
    return ((-(N + 1) * k) % 1.0) * math.pi


def unwrap_phase(phases: Iterable[float]) -> np.ndarray:
    """Lift a sequence of folded phases to a continuous curve (period pi)."""
    return np.unwrap(np.asarray(list(phases), dtype=float), period=math.pi)


def plus_minus_levels(
    N: int, n: int, z_values: Sequence[float]
) -> Tuple[LevelCurve, LevelCurve]:
    """The continuous level pair k_n+/k_n- flanking the resonance k = n.

    The resonant root sits above n for z > 0 and below n for z < 0, while
    the exceptional level pins k = n for every coupling.  Gluing root and
    constant across z = 0 yields two continuous curves, each sweeping a
    half-window of width 1/(N+1); both carry the resonant label.
    """
    if n < 1:
        raise ValueError(f"resonance index must be >= 1, got {n}")
    index = LevelIndex(N, n, 0)
    upper = []
    lower = []
    for z in z_values:
        if z == 0:
            root = float(n)
        else:
            root = exact_level(N, z, index)
        upper.append((z, root if z > 0 else float(n)))
        lower.append((z, root if z < 0 else float(n)))
    return (
        LevelCurve(index=index, samples=tuple(upper), method="exact"),
        LevelCurve(index=index, samples=tuple(lower), method="exact"),
    )


def resummed_large_n(n: int, N: int, z: float) -> float:
    """Large-n resummed resonant momentum n (1 + z + z^2 [pi n cot(pi n N z) + 1]).

    The cotangent has poles exactly at the critical couplings j/(nN); the
    formula is refused within 1e-6 of a pole, measured relative to the
    pole spacing 1/(nN).
    """
    if N < 1:
        raise ValueError(f"cavity ratio N must be >= 1, got {N}")
    if n < 1:
        raise ValueError(f"resonance index must be >= 1, got {n}")
    m = z * n * N
    j = round(m)
    if abs(m - j) <= 1e-6:
        raise PoleProximityError(
            f"z = {z} is within 1e-6 cells of the critical coupling "
            f"{j}/({n}*{N}); the resummed form has a pole there"
        )
    cot = math.cos(math.pi * m) / math.sin(math.pi * m)
    return n * (1.0 + z + z * z * (math.pi * n * cot + 1.0))


def half_line_ranges(N: int, n: int, l: int) -> Tuple[Fraction, Fraction]:
    """Total k-excursion of a non-resonant level on each coupling half line.

    Returns (range over z < 0, range over z > 0) for the level
    kappa = n + l/N with 1 <= l < N; the two add up to the full window
    width 1/(N+1) and are independent of n.  The l < 0 case follows by
    the mirror symmetry of the window and is rejected here.
    """
    if N < 2:
        raise ValueError("non-resonant levels exist only for N >= 2")
    if n < 0:
        raise ValueError(f"level index must be >= 0, got {n}")
    if l <= 0:
        raise ValueError(f"half-line ranges are tabulated for l >= 1, got {l}")
    if l >= N:
        raise ValueError(f"l must stay below N = {N}, got {l}")
    down = Fraction(l, N * (N + 1))
    up = Fraction(N - l, N * (N + 1))
    return (down, up)


def _amp2_slope(N: int, k: float) -> float:
    """d/dk of A_N(k)^2, analytic."""
    s1 = math.sin(math.pi * k)
    sN = math.sin(math.pi * N * k)
    c1 = math.cos(math.pi * k)
    cN = math.cos(math.pi * N * k)
    return (2.0 * math.pi * sN / (s1 * s1)) * (N * cN - sN * c1 / s1)


def local_maximum(N: int, n: int, u: int) -> float:
    """Momentum of the u-th side maximum of A_N above the resonance at n.

    Candidates sit near n + (u + 1/2)/N; u = 0 and u = -1 are rejected
    because those half-cells merge into the central peak at k = n, and so
    is every u congruent to them mod N, whose half-cells flank some other
    integer peak.  One Newton step on d(A^2)/dk from the midpoint pins
    the maximum.
    """
    if N < 2:
        raise ValueError("side maxima need N >= 2")
    if n < 1:
        raise ValueError(f"resonance index must be >= 1, got {n}")
    if u % N in (0, N - 1):
        raise ValueError(
            "u = 0 and u = -1 (mod N) label half-cells touching an integer peak"
        )
    k0 = n + (u + 0.5) / N
    if k0 <= 0:
        raise ValueError("candidate momentum is not positive")
    g0 = _amp2_slope(N, k0)
    delta = 1e-6
    gprime = (_amp2_slope(N, k0 + delta) - _amp2_slope(N, k0 - delta)) / (2.0 * delta)
    if gprime == 0.0:
        raise NumericalError("flat curvature at the candidate maximum")
    return k0 - g0 / gprime


@dataclass(frozen=True)
class ResonanceDiagnostics:
    """Pointwise resonance picture of one level at one coupling."""

    N: int
    z: float
    k: float
    n_eff: int
    amplitude: float
    phase: float
    slope: float
    critical_below: Fraction
    critical_above: Fraction
    midpoint: Fraction


def resonance_diagnostics(
    N: int, z: float, k: float, n: int | None = None
) -> ResonanceDiagnostics:
    """Amplitude, phase, level slope and the critical-coupling cell at (z, k).

    The resonance index defaults to the nearest integer momentum; the
    slope of an integer-momentum (exceptional) level is exactly 0.
    """
    n_eff = n if n is not None else max(1, round(k))
    if n_eff < 1:
        raise ValueError(f"resonance index must be >= 1, got {n_eff}")
    slope = 0.0 if k == round(k) else dk_dz(N, z, k)
    cell = Fraction(1, n_eff * N)
    j = math.floor(z / float(cell))
    return ResonanceDiagnostics(
        N=N,
        z=z,
        k=k,
        n_eff=n_eff,
        amplitude=amplitude_ratio(N, k),
        phase=phase_shift(N, k),
        slope=slope,
        critical_below=j * cell,
        critical_above=(j + 1) * cell,
        midpoint=Fraction(2 * j + 1, 2 * n_eff * N),
    )
