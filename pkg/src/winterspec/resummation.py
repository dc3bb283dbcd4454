"""All-order resummation of level momenta through closed branch inverses.

For N <= 4 the quantization condition reduces to a polynomial relation in
t = tan(w - nu_eff), so each level branch owns a closed inverse H with
w = nu_eff + H(eta) at lowest order, eta = nu_eff times the branch
coupling.  H is an arctangent of nested radicals (quadratic for N = 2,
Cardano for N = 3, Ferrari for N = 4).  Three schemes are built on H:

* finite-order recursion  w = nu + H(eta + c H(eta + c H(...)))
* damped-free fixed-point iteration of Delta = H(eta + c Delta)
* a coupling series w = nu + sum_i phi_{i+1}(eta) c^i whose coefficient
  functions are extracted with truncated-Taylor (jet) arithmetic

All three agree with the exact root of the same branch to the accuracy of
their truncation; the fixed point converges to it.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum, unique
from fractions import Fraction
from typing import Dict, Optional, Tuple

from .core import Kind, LevelIndex
from .jets import (
    Jet,
    jet_arctan,
    jet_cbrt,
    jet_conj_coeffs,
    jet_real,
    jet_shift_down,
    jet_sqrt,
)

_SQRT3 = math.sqrt(3.0)
_ROT6 = complex(_SQRT3 / 2.0, 0.5)  # exp(i pi / 6)

#: below this |argument| the N = 4 Res/Up/Down towers switch to their
#: polynomial small-argument form (the radicals cancel to O(x^2) there)
FALLBACK_RADIUS = 1e-4


@unique
class Branch(Enum):
    RESONANT = "resonant"
    NONRES_UP = "up"
    NONRES_DOWN = "down"
    NONRES_MID = "mid"


@dataclass(frozen=True)
class BranchFunction:
    """Static data of one branch: offsets, coupling flavor, validity floor."""

    N: int
    branch: Branch
    l: int
    shift: Fraction  # nu_eff = pi (n + shift)
    coupling: str  # "z" or "zeta"
    min_n: int

    def nu_eff(self, n: int) -> float:
        return math.pi * (n + float(self.shift))

    def coupling_value(self, z: float) -> float:
        if self.coupling == "zeta":
            return (1.0 + 1.0 / self.N) * z
        return z


BRANCH_TABLE: Dict[Tuple[int, Branch], BranchFunction] = {
    (N, branch): BranchFunction(N, branch, l, Fraction(*shift), coupling, min_n)
    for (N, branch, l, shift, coupling, min_n) in (
        (1, Branch.RESONANT, 0, (0, 1), "zeta", 1),
        (2, Branch.RESONANT, 0, (0, 1), "z", 1),
        (2, Branch.NONRES_UP, 1, (1, 2), "z", 0),
        (3, Branch.RESONANT, 0, (0, 1), "zeta", 1),
        (3, Branch.NONRES_UP, 1, (1, 3), "zeta", 0),
        (3, Branch.NONRES_DOWN, -1, (-1, 3), "zeta", 1),
        (4, Branch.RESONANT, 0, (0, 1), "z", 1),
        (4, Branch.NONRES_UP, 1, (1, 4), "z", 0),
        (4, Branch.NONRES_DOWN, -1, (-1, 4), "z", 1),
        (4, Branch.NONRES_MID, 2, (1, 2), "z", 0),
    )
}

_L_TO_BRANCH = {
    0: Branch.RESONANT,
    1: Branch.NONRES_UP,
    -1: Branch.NONRES_DOWN,
    2: Branch.NONRES_MID,
}

# additive arctangent offset making H(0) = 0 on branches whose argument
# tends to a nonzero constant (tan of the offset) at zero coupling
_H_OFFSET: Dict[Tuple[int, Branch], float] = {
    (3, Branch.NONRES_UP): -math.pi / 3.0,
    (3, Branch.NONRES_DOWN): math.pi / 3.0,
    (4, Branch.NONRES_UP): -math.pi / 4.0,
    (4, Branch.NONRES_DOWN): math.pi / 4.0,
}

# small-argument Taylor of the N = 4 arctangent argument t(x), exact
# rational coefficients of the quartic branch through t(0) = 0, +1, -1
_N4_FALLBACK: Dict[Branch, Tuple[Fraction, ...]] = {
    Branch.RESONANT: (
        Fraction(0),
        Fraction(5, 4),
        Fraction(0),
        Fraction(-125, 64),
        Fraction(0),
        Fraction(1875, 512),
    ),
    Branch.NONRES_UP: (
        Fraction(1),
        Fraction(1, 2),
        Fraction(5, 8),
        Fraction(3, 8),
        Fraction(-49, 128),
        Fraction(-19, 16),
    ),
    Branch.NONRES_DOWN: (
        Fraction(-1),
        Fraction(1, 2),
        Fraction(-5, 8),
        Fraction(3, 8),
        Fraction(49, 128),
        Fraction(-19, 16),
    ),
}
_N4_FALLBACK_F = {b: tuple(map(float, cs)) for b, cs in _N4_FALLBACK.items()}


def _lookup(N: int, branch: Branch) -> BranchFunction:
    try:
        return BRANCH_TABLE[(N, branch)]
    except KeyError:
        raise ValueError(f"no {branch.value} branch for N = {N}") from None


def branch_for_level(index: LevelIndex) -> BranchFunction:
    """The branch owning a normal level; exceptional levels have none."""
    if index.kind is Kind.EXCEPTIONAL:
        raise ValueError("exceptional levels are coupling independent")
    if index.N > 4:
        raise ValueError(f"closed branch inverses cover N <= 4, got N = {index.N}")
    return _lookup(index.N, _L_TO_BRANCH[index.l])


def _ccbrt(v: complex) -> complex:
    if v == 0:
        return 0j
    return cmath.exp(cmath.log(v) / 3.0)


# -- scalar radical towers -------------------------------------------------


def _arg_n2(branch: Branch, x: float) -> complex:
    root = math.sqrt(1.0 + 3.0 * x * x)
    if branch is Branch.RESONANT:
        return complex(3.0 * x / (root + 1.0))
    return complex(x / (root + 1.0))


def _arg_n3(branch: Branch, x: float) -> complex:
    x2 = x * x
    big = math.sqrt(1.0 + 3.0 * x2 + 3.0 * x2 * x2)
    cp = _ccbrt(complex(big, x * x2))
    cm = _ccbrt(complex(big, -x * x2))
    if branch is Branch.RESONANT:
        return x + 1j * (cp - cm)
    if branch is Branch.NONRES_UP:
        return x + (_SQRT3 / 2.0) * (cp + cm) - 0.5j * (cp - cm)
    return x - (_SQRT3 / 2.0) * (cp + cm) - 0.5j * (cp - cm)


def _arg_n4(branch: Branch, x: float) -> complex:
    x2 = x * x
    big = math.sqrt(1.0 + 7.0 * x2 + 25.0 * x2 * x2 + 31.25 * x2 * x2 * x2)
    gee = x * (25.0 * x2 + 18.0) / (6.0 * _SQRT3)
    fp = _ccbrt(complex(big, -gee))
    fm = _ccbrt(complex(big, gee))
    sigma = 1.0 + (5.0 / 3.0) * x2 + (x / _SQRT3) * (_ROT6 * fp + _ROT6.conjugate() * fm)
    rs = cmath.sqrt(sigma)
    shared = 3.0 + 5.0 * x2 - sigma
    tail = 2.0 * (1.0 + 2.0 * x2) / rs
    if branch is Branch.NONRES_MID:
        return x / (1.0 + rs + cmath.sqrt(shared + tail))
    if branch is Branch.NONRES_DOWN:
        return (cmath.sqrt(shared + tail) - rs - 1.0) / x
    # the vanishing radical is taken as x * sqrt(A/x^2) to keep its sign
    bp = x * cmath.sqrt((shared - tail) / x2)
    if branch is Branch.RESONANT:
        return (rs - 1.0 - bp) / x
    return (rs - 1.0 + bp) / x


def branch_argument(N: int, branch: Branch, x: float) -> complex:
    """Raw arctangent argument of the radical tower (no fallback switch).

    Exactly real in exact arithmetic; returned as a complex so callers can
    audit the rounding-level imaginary residue.  The N = 4 Res/Up/Down
    towers divide by x and reject x = 0.
    """
    _lookup(N, branch)
    if N == 1:
        return complex(x)
    if N == 2:
        return _arg_n2(branch, x)
    if N == 3:
        return _arg_n3(branch, x)
    return _arg_n4(branch, x)


def _horner(coeffs: Tuple[float, ...], x: float) -> float:
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def branch_H(N: int, branch: Branch, x: float) -> float:
    """Closed branch inverse H(x); w = nu_eff + H at lowest order."""
    spec = _lookup(N, branch)
    offset = _H_OFFSET.get((N, branch), 0.0)
    if spec.N == 4 and branch is not Branch.NONRES_MID and abs(x) < FALLBACK_RADIUS:
        return math.atan(_horner(_N4_FALLBACK_F[branch], x)) + offset
    return math.atan(branch_argument(N, branch, x).real) + offset


# -- jet radical towers ------------------------------------------------------


def _jet_div_vanishing(num: Jet, den: Jet, m: int) -> Jet:
    """num / den where den may carry an exact m-fold zero at the center."""
    if den.value != 0:
        return num / den
    return jet_shift_down(num, m) / jet_shift_down(den, m)


def _arg_jet_n2(branch: Branch, a: Jet) -> Jet:
    root = jet_sqrt(1.0 + a * a * 3.0)
    num = a * 3.0 if branch is Branch.RESONANT else a
    return num / (root + 1.0)


def _arg_jet_n3(branch: Branch, a: Jet) -> Jet:
    a2 = a * a
    big = jet_sqrt(1.0 + a2 * 3.0 + a2 * a2 * 3.0)
    cp = jet_cbrt(big + a2 * a * 1j)
    cm = jet_conj_coeffs(cp)
    if branch is Branch.RESONANT:
        return a + (cp - cm) * 1j
    if branch is Branch.NONRES_UP:
        return a + (cp + cm) * (_SQRT3 / 2.0) - (cp - cm) * 0.5j
    return a - (cp + cm) * (_SQRT3 / 2.0) - (cp - cm) * 0.5j


def _arg_jet_n4(branch: Branch, a: Jet) -> Jet:
    a2 = a * a
    big = jet_sqrt(1.0 + a2 * 7.0 + a2 * a2 * 25.0 + a2 * a2 * a2 * 31.25)
    gee = a * (a2 * 25.0 + 18.0) * (1.0 / (6.0 * _SQRT3))
    fp = jet_cbrt(big - gee * 1j)
    fm = jet_conj_coeffs(fp)
    sigma = 1.0 + a2 * (5.0 / 3.0) + a * (1.0 / _SQRT3) * (fp * _ROT6 + fm * _ROT6.conjugate())
    rs = jet_sqrt(sigma)
    shared = 3.0 + a2 * 5.0 - sigma
    tail = (1.0 + a2 * 2.0) * 2.0 / rs
    if branch is Branch.NONRES_MID:
        return a / (1.0 + rs + jet_sqrt(shared + tail))
    if branch is Branch.NONRES_DOWN:
        return _jet_div_vanishing(jet_sqrt(shared + tail) - rs - 1.0, a, 1)
    bp = a * jet_sqrt(_jet_div_vanishing(shared - tail, a * a, 2))
    num = rs - 1.0 - bp if branch is Branch.RESONANT else rs - 1.0 + bp
    return _jet_div_vanishing(num, a, 1)


def _argument_jet(N: int, branch: Branch, a: Jet) -> Jet:
    """Jet counterpart of :func:`branch_argument` (no fallback switch).

    Coefficients of ``a`` must be real (real expansion point); the N = 4
    Res/Up/Down towers need a nonzero center or a simple zero of ``a``.
    """
    _lookup(N, branch)
    if N == 1:
        return a
    if N == 2:
        return _arg_jet_n2(branch, a)
    if N == 3:
        return _arg_jet_n3(branch, a)
    return _arg_jet_n4(branch, a)


def _horner_jet(coeffs: Tuple[float, ...], a: Jet) -> Jet:
    acc = Jet.constant(0.0, a.order)
    for c in reversed(coeffs):
        acc = acc * a + c
    return acc


def branch_H_jet(N: int, branch: Branch, a: Jet) -> Jet:
    """Jet counterpart of :func:`branch_H`, same fallback switching."""
    spec = _lookup(N, branch)
    offset = _H_OFFSET.get((N, branch), 0.0)
    if spec.N == 4 and branch is not Branch.NONRES_MID and abs(a.value) < FALLBACK_RADIUS:
        arg = _horner_jet(_N4_FALLBACK_F[branch], a)
    else:
        arg = _argument_jet(N, branch, a)
    return jet_arctan(jet_real(arg)) + offset


# -- schemes -----------------------------------------------------------------


@dataclass(frozen=True)
class SchemeResult:
    """Momentum estimate of one branch level plus scheme bookkeeping."""

    w: float
    scheme: str
    order: Optional[int]
    effective_index: float
    iterations: int
    last_increment: float
    converged: bool

    @property
    def k(self) -> float:
        return self.w / math.pi


def _setup(N: int, branch: Branch, n: int, z: float) -> Tuple[BranchFunction, float, float, float]:
    spec = _lookup(N, branch)
    if n < spec.min_n:
        raise ValueError(
            f"{branch.value} branch of N = {N} starts at n = {spec.min_n}, got {n}"
        )
    nu = spec.nu_eff(n)
    c = spec.coupling_value(z)
    return spec, nu, c, nu * c


def recursive_momentum(N: int, branch: Branch, n: int, z: float, order: int = 3) -> SchemeResult:
    """Finite-order recursion w = nu + H(eta + c H(eta + ...)), depth = order."""
    if order < 1:
        raise ValueError(f"recursion order must be >= 1, got {order}")
    spec, nu, c, eta = _setup(N, branch, n, z)
    delta = branch_H(N, branch, eta)
    last = abs(delta)
    for _ in range(order - 1):
        nxt = branch_H(N, branch, eta + c * delta)
        last = abs(nxt - delta)
        delta = nxt
    return SchemeResult(
        w=nu + delta,
        scheme="recursive",
        order=order,
        effective_index=n + float(spec.shift),
        iterations=order,
        last_increment=last,
        converged=True,
    )


def fixed_point_momentum(
    N: int,
    branch: Branch,
    n: int,
    z: float,
    tol: float = 1e-13,
    max_iter: int = 64,
) -> SchemeResult:
    """Iterate Delta <- H(eta + c Delta) to its fixed point w = nu + Delta.

    Non-convergence within max_iter is reported through the converged
    flag rather than raised; the last iterate is still returned.
    """
    spec, nu, c, eta = _setup(N, branch, n, z)
    delta = 0.0
    last = math.inf
    converged = False
    iterations = 0
    for iterations in range(1, max_iter + 1):
        nxt = branch_H(N, branch, eta + c * delta)
        last = abs(nxt - delta)
        delta = nxt
        if last < tol:
            converged = True
            break
    return SchemeResult(
        w=nu + delta,
        scheme="fixed_point",
        order=None,
        effective_index=n + float(spec.shift),
        iterations=iterations,
        last_increment=last,
        converged=converged,
    )


def phi_functions(N: int, branch: Branch, eta: float, order: int) -> Tuple[float, ...]:
    """Coefficient functions phi_1(eta) .. phi_order(eta) of the c-series.

    Extracted by iterating the fixed-point map on jets in the coupling
    multiplier: sweep m of Delta(beta) = H(eta + beta Delta) freezes the
    coefficient of beta^(m-1).
    """
    if order < 1:
        raise ValueError(f"series order must be >= 1, got {order}")
    if order == 1:
        return (branch_H(N, branch, eta),)
    beta = Jet.variable(0.0, order - 1)
    center = Jet.constant(eta, order - 1)
    delta = Jet.constant(0.0, order - 1)
    for _ in range(order):
        delta = branch_H_jet(N, branch, center + beta * delta)
    return tuple(c.real for c in delta.coeffs)


def series_momentum(N: int, branch: Branch, n: int, z: float, order: int = 5) -> SchemeResult:
    """Truncated coupling series w = nu + sum_{i<order} phi_{i+1}(eta) c^i."""
    spec, nu, c, eta = _setup(N, branch, n, z)
    phis = phi_functions(N, branch, eta, order)
    w = nu
    term = 0.0
    for i, phi in enumerate(phis):
        term = phi * c ** i
        w += term
    return SchemeResult(
        w=w,
        scheme="series",
        order=order,
        effective_index=n + float(spec.shift),
        iterations=order,
        last_increment=abs(term),
        converged=True,
    )


def phi_closed_n1(eta: float) -> Tuple[float, float, float]:
    """Closed forms of phi_1..phi_3 for N = 1, used as an independent check."""
    at = math.atan(eta)
    den = 1.0 + eta * eta
    return (at, at / den, at / den ** 2 - eta * at * at / den ** 2)
