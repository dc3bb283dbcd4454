"""Closed-form cubic and quartic roots with fixed principal branches.

Radicals use the principal branch (cut on the negative real axis) so that
1**(1/2) = 1**(1/3) = 1 exactly; downstream branch selection in the momentum
towers relies on this normalization.  Real cubics with three real roots pass
through genuinely complex intermediates and come back real (the irreducible
case); no trigonometric shortcut is taken.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Tuple

# primitive cube root of unity, f = exp(2 pi i / 3)
_F = complex(-0.5, 0.8660254037844386)

_SIGN_PAIRS: Tuple[Tuple[int, int], ...] = ((1, 1), (1, -1), (-1, 1), (-1, -1))


def _principal_cbrt(v: complex) -> complex:
    if v == 0:
        return 0j
    return cmath.exp(cmath.log(v) / 3.0)


@dataclass(frozen=True)
class CubicRoots:
    """Roots x_n (n = 0, 1, 2) of x^3 + a x^2 + b x + c, f^n ordering."""

    roots: Tuple[complex, complex, complex]


@dataclass(frozen=True)
class QuarticRoots:
    """Roots of x^4 + a x^3 + b x^2 + c x + d indexed by sign pairs.

    ``roots[i]`` corresponds to ``sign_pairs[i]``; ``resolvent_root`` is the
    v0 used in the radical formula (0 when the biquadratic bypass was taken).
    """

    roots: Tuple[complex, complex, complex, complex]
    resolvent_root: complex
    sign_pairs: Tuple[Tuple[int, int], ...] = _SIGN_PAIRS

    def root(self, eps1: int, eps2: int) -> complex:
        return self.roots[self.sign_pairs.index((eps1, eps2))]


def depress_cubic(a: complex, b: complex, c: complex) -> Tuple[complex, complex]:
    """Shift x = y - a/3: returns (p, q) of y^3 + p y + q."""
    a, b, c = complex(a), complex(b), complex(c)
    p = b - a * a / 3.0
    q = c - a * b / 3.0 + 2.0 * a * a * a / 27.0
    return p, q


def _newton_polish_poly(coeffs: Tuple[complex, ...], x: complex) -> complex:
    """One Newton step on a monic polynomial given trailing coefficients."""
    val = 1 + 0j
    der = 0j
    for c in coeffs:
        der = der * x + val
        val = val * x + c
    if der == 0:
        return x
    return x - val / der


def solve_cubic(a: complex, b: complex, c: complex, polish: bool = False) -> CubicRoots:
    """All roots of x^3 + a x^2 + b x + c by the radical formula.

    The cube-root pair (u, v) is fixed by taking u^3 as the larger-magnitude
    determination -q/2 +/- sqrt(q^2/4 + p^3/27) and v = -p/(3u); when p = 0
    this degenerates to v = 0, u^3 = -q, which is the formula's own limit.
    """
    a, b, c = complex(a), complex(b), complex(c)
    p, q = depress_cubic(a, b, c)
    s = cmath.sqrt(q * q / 4.0 + p * p * p / 27.0)
    cand_plus = -q / 2.0 + s
    cand_minus = -q / 2.0 - s
    u3 = cand_plus if abs(cand_plus) >= abs(cand_minus) else cand_minus
    u = _principal_cbrt(u3)
    v = 0j if u == 0 else -p / (3.0 * u)
    fs = (1 + 0j, _F, _F * _F)
    roots = tuple(fs[n] * u + fs[n].conjugate() * v - a / 3.0 for n in range(3))
    if polish:
        roots = tuple(_newton_polish_poly((a, b, c), x) for x in roots)
    return CubicRoots(roots=roots)  # type: ignore[arg-type]


def solve_quartic(
    a: complex, b: complex, c: complex, d: complex, polish: bool = False
) -> QuarticRoots:
    """All roots of x^4 + a x^3 + b x^2 + c x + d by the resolvent formula.

    The resolvent root of largest magnitude is used; if every resolvent root
    is below 1e-12 (scaled) the equation is a biquadratic (q = 0) and is
    solved directly, bypassing the q/sqrt(2 v0) division.
    """
    a, b, c, d = complex(a), complex(b), complex(c), complex(d)
    if a == b == c == d == 0:
        raise ValueError("degenerate all-zero quartic input")
    p = b - 3.0 * a * a / 8.0
    q = c - a * b / 2.0 + a * a * a / 8.0
    r = d + a * a * b / 16.0 - a * c / 4.0 - 3.0 * (a ** 4) / 256.0

    resolvent = solve_cubic(p, p * p / 4.0 - r, -q * q / 8.0)
    v0 = max(resolvent.roots, key=abs)
    scale = max(1.0, abs(p), abs(r) ** 0.5)

    roots = []
    if abs(v0) < 1e-12 * scale:
        # biquadratic path: y^4 + p y^2 + r = 0
        disc = cmath.sqrt(p * p - 4.0 * r)
        for eps1, eps2 in _SIGN_PAIRS:
            y = eps2 * cmath.sqrt((-p + eps1 * disc) / 2.0)
            roots.append(y - a / 4.0)
        v0 = 0j
    else:
        sq2v = cmath.sqrt(2.0 * v0)
        for eps1, eps2 in _SIGN_PAIRS:
            inner = -(p + v0) / 2.0 - eps1 * q / (2.0 * sq2v)
            y = eps1 * sq2v / 2.0 + eps2 * cmath.sqrt(inner)
            roots.append(y - a / 4.0)
    if polish:
        roots = [_newton_polish_poly((a, b, c, d), x) for x in roots]
    return QuarticRoots(roots=tuple(roots), resolvent_root=v0)
