"""Shared domain types for the delta-shell cavity spectrum.

A particle lives on the segment [0, (N+1)pi] with a delta barrier at x = pi
splitting it into a small cavity of length pi and a large one of length N*pi.
Everything downstream is indexed by the integer cavity ratio N, a level index,
and one coupling constant expressed in three sign/scale conventions.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence, Tuple, Union


class NumericalError(RuntimeError):
    """A numerical procedure failed (lost bracket, non-convergence, bad count).

    Mapped to exit code 3 by the CLI, as opposed to configuration errors.
    """


class Kind(enum.Enum):
    """Classification of a momentum level by its free-coupling limit."""

    EXCEPTIONAL = "exceptional"   # integer momentum, coupling independent
    RESONANT = "resonant"         # k(z=0) integer, but the level moves with z
    NONRESONANT = "nonresonant"   # k(z=0) = n + l/N with l != 0


@dataclass(frozen=True)
class CouplingSet:
    """One barrier coupling in the three conventions g, z = -g, zeta.

    zeta = -(1+1/N) g is tied to the N the set was built with.  Conversions
    happen here once; downstream code never re-derives signs.
    """

    N: int
    g: float

    def __post_init__(self) -> None:
        if self.N < 1:
            raise ValueError(f"cavity ratio N must be >= 1, got {self.N}")

    @property
    def z(self) -> float:
        return -self.g

    @property
    def zeta(self) -> float:
        return (1.0 + 1.0 / self.N) * (-self.g)

    @classmethod
    def from_g(cls, N: int, g: float) -> "CouplingSet":
        return cls(N, float(g))

    @classmethod
    def from_z(cls, N: int, z: float) -> "CouplingSet":
        return cls(N, -float(z))

    @classmethod
    def from_zeta(cls, N: int, zeta: float) -> "CouplingSet":
        # nearest representable g; the zeta property then reproduces the
        # defining relation zeta == (1+1/N) z exactly by construction
        return cls(N, -float(zeta) * N / (N + 1))


@dataclass(frozen=True)
class LevelIndex:
    """Label (N, n, l, kind) of one momentum level.

    Normal levels have free momentum n + l/N with the quasi-symmetric
    sub-index convention -N/2 < l <= N/2; l values given in the plain
    remainder convention 0..N-1 are normalized on input.  Exceptional levels
    (integer momentum, independent of the coupling) are built with
    :func:`exceptional_level`, not by classification, because they coexist
    with resonant levels at the same k.
    """

    N: int
    n: int
    l: int = 0
    kind: Kind = field(default=None)  # type: ignore[assignment]

    def __post_init__(self) -> None:
        if self.N < 1:
            raise ValueError(f"cavity ratio N must be >= 1, got {self.N}")
        if self.kind is Kind.EXCEPTIONAL:
            if self.l != 0:
                raise ValueError("exceptional levels carry no sub-index")
            if self.n < 1:
                raise ValueError("exceptional levels start at n = 1")
            return
        n, l = self.n, self.l
        # normalize l into (-N/2, N/2], moving whole units into n
        if not (-self.N / 2 < l <= self.N / 2):
            s = n * self.N + l
            if s < 1:
                raise ValueError(f"free momentum index s = {s} must be >= 1")
            n, l = _split_index(self.N, s)
            object.__setattr__(self, "n", n)
            object.__setattr__(self, "l", l)
        kind = Kind.RESONANT if self.l == 0 else Kind.NONRESONANT
        if self.kind is None:
            object.__setattr__(self, "kind", kind)
        elif self.kind is not kind:
            raise ValueError(f"kind {self.kind} inconsistent with l = {self.l}")
        if self.kind is Kind.RESONANT and self.n < 1:
            raise ValueError("resonant levels require n >= 1")
        if self.s < 1:
            raise ValueError(f"free momentum index s = {self.s} must be >= 1")

    @property
    def s(self) -> int:
        """Integer free-momentum index, s = n N + l (k_free = s/N)."""
        return self.n * self.N + self.l

    @property
    def free_momentum(self) -> Fraction:
        """Momentum in the free limit z -> 0, exact."""
        if self.kind is Kind.EXCEPTIONAL:
            return Fraction(self.n)
        return Fraction(self.s, self.N)

    @property
    def label(self) -> str:
        """Stable text label, e.g. ``k_4/3`` (``k_2_exc`` for exceptional)."""
        if self.kind is Kind.EXCEPTIONAL:
            return f"k_{self.n}_exc"
        return f"k_{self.free_momentum}"


def _split_index(N: int, s: int) -> Tuple[int, int]:
    """Euclidean split s = n N + l with -N/2 < l <= N/2."""
    n, l = divmod(s, N)
    if 2 * l > N:
        n, l = n + 1, l - N
    return n, l


def classify_free_momentum(N: int, s: int) -> LevelIndex:
    """Classify the normal level with free momentum s/N.

    Returns the (n, l, kind) label with the quasi-symmetric remainder;
    multiples of N are resonant, everything else non-resonant.  Exceptional
    levels are enumerated separately by :func:`exceptional_levels`.
    """
    if N < 1:
        raise ValueError(f"cavity ratio N must be >= 1, got {N}")
    if s < 1:
        raise ValueError(f"free momentum index s must be >= 1, got {s}")
    n, l = _split_index(N, s)
    return LevelIndex(N=N, n=n, l=l)


def exceptional_level(N: int, n: int) -> LevelIndex:
    """The n-th exceptional level: k = n for every coupling."""
    return LevelIndex(N=N, n=n, l=0, kind=Kind.EXCEPTIONAL)


def exceptional_levels(N: int, k_max: float) -> Iterator[LevelIndex]:
    """All exceptional levels with momentum in (0, k_max)."""
    n = 1
    while n < k_max:
        yield exceptional_level(N, n)
        n += 1


def critical_coupling(n: int, N: int, j: int) -> Fraction:
    """Critical coupling z_c = j/(n N); j = 0 gives the free point z = 0."""
    if n < 1 or N < 1:
        raise ValueError("need n >= 1 and N >= 1")
    return Fraction(j, n * N)


def midpoint_coupling(n: int, N: int, l: int) -> Fraction:
    """Coupling z_m = (l + 1/2)/(n N), halfway between adjacent criticals."""
    if n < 1 or N < 1:
        raise ValueError("need n >= 1 and N >= 1")
    return Fraction(2 * l + 1, 2 * n * N)


def level_range(N: int, kind: Kind) -> Fraction:
    """Total momentum range swept by a level over the whole coupling line."""
    if N < 1:
        raise ValueError(f"cavity ratio N must be >= 1, got {N}")
    if kind is Kind.RESONANT:
        return Fraction(2, N + 1)
    if kind is Kind.NONRESONANT:
        return Fraction(1, N + 1)
    return Fraction(0)


def cavity_length(N: int) -> float:
    """Total segment length L = (N+1) pi."""
    return (N + 1) * math.pi


def energy(k: float) -> float:
    """Energy of a momentum-k level (units 2m = hbar = 1)."""
    return k * k


@dataclass(frozen=True)
class LevelCurve:
    """A sampled (z, k) curve for one labeled level.

    ``method`` records how the samples were produced: "exact",
    "perturbative(order)", "recursive(order)", "series(order)" or
    "resummed_large_n".
    """

    index: LevelIndex
    samples: Tuple[Tuple[float, float], ...]
    method: str

    def __post_init__(self) -> None:
        zs = [z for z, _ in self.samples]
        if any(b <= a for a, b in zip(zs, zs[1:])):
            raise ValueError("curve samples must be strictly increasing in z")

    @property
    def z_values(self) -> Tuple[float, ...]:
        return tuple(z for z, _ in self.samples)

    @property
    def k_values(self) -> Tuple[float, ...]:
        return tuple(k for _, k in self.samples)

    def k_range(self) -> float:
        ks = self.k_values
        return max(ks) - min(ks)


def method_label(kind: str, order: Union[int, None] = None) -> str:
    """Canonical method string for LevelCurve/CSV metadata."""
    return kind if order is None else f"{kind}({order})"
