"""Truncated Taylor-series (jet) arithmetic over complex scalars.

A jet stores the coefficients a_0..a_P of f(x0 + eps) = sum a_j eps^j up to
a fixed order P.  Arithmetic truncates at the smaller operand order, and the
elementary functions (arctan, sqrt, cbrt) propagate their derivative ODEs
term by term, which stays stable near branch points.  This is the engine
that extracts series-resummation coefficients as high-order derivatives.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Sequence, Tuple, Union

Scalar = Union[int, float, complex]

# capacity covering the twenty-function series experiment with headroom
DEFAULT_MAX_ORDER = 24


class JetCapacityError(ValueError):
    """Requested jet order above the supported capacity."""


@dataclass(frozen=True)
class Jet:
    """Truncated Taylor polynomial sum(coeffs[j] * eps^j), j = 0..order."""

    coeffs: Tuple[complex, ...]

    def __post_init__(self) -> None:
        if not self.coeffs:
            raise ValueError("a jet needs at least the constant coefficient")
        if len(self.coeffs) - 1 > DEFAULT_MAX_ORDER:
            raise JetCapacityError(
                f"jet order {len(self.coeffs) - 1} exceeds capacity {DEFAULT_MAX_ORDER}"
            )
        if not all(isinstance(c, complex) for c in self.coeffs):
            object.__setattr__(
                self, "coeffs", tuple(complex(c) for c in self.coeffs)
            )

    # -- constructors ------------------------------------------------------

    @classmethod
    def constant(cls, value: Scalar, order: int) -> "Jet":
        return cls((complex(value),) + (0j,) * order)

    @classmethod
    def variable(cls, value: Scalar, order: int) -> "Jet":
        """The jet of x at x0 = value: constant term plus unit first order."""
        if order < 1:
            raise ValueError("a variable jet needs order >= 1")
        return cls((complex(value), 1 + 0j) + (0j,) * (order - 1))

    # -- basics ------------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def value(self) -> complex:
        return self.coeffs[0]

    def truncated(self, order: int) -> "Jet":
        if order >= self.order:
            return self
        return Jet(self.coeffs[: order + 1])

    def real_coeffs(self, tol: float = 1e-9) -> Tuple[float, ...]:
        """Real parts of the coefficients, checking the imaginary residue."""
        scale = max(1.0, max(abs(c) for c in self.coeffs))
        worst = max(abs(c.imag) for c in self.coeffs)
        if worst > tol * scale:
            raise NumericalJetError(
                f"jet expected real has imaginary residue {worst:.3e}"
            )
        return tuple(c.real for c in self.coeffs)

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other: Union["Jet", Scalar]) -> "Jet":
        if isinstance(other, Jet):
            return other
        return Jet.constant(other, self.order)

    def __add__(self, other: Union["Jet", Scalar]) -> "Jet":
        b = self._coerce(other)
        p = min(self.order, b.order)
        return Jet(tuple(self.coeffs[j] + b.coeffs[j] for j in range(p + 1)))

    __radd__ = __add__

    def __neg__(self) -> "Jet":
        return Jet(tuple(-c for c in self.coeffs))

    def __sub__(self, other: Union["Jet", Scalar]) -> "Jet":
        return self + (-self._coerce(other))

    def __rsub__(self, other: Scalar) -> "Jet":
        return (-self) + other

    def __mul__(self, other: Union["Jet", Scalar]) -> "Jet":
        if not isinstance(other, Jet):
            return Jet(tuple(c * complex(other) for c in self.coeffs))
        p = min(self.order, other.order)
        out = []
        for j in range(p + 1):
            acc = 0j
            for i in range(j + 1):
                acc += self.coeffs[i] * other.coeffs[j - i]
            out.append(acc)
        return Jet(tuple(out))

    __rmul__ = __mul__

    def __truediv__(self, other: Union["Jet", Scalar]) -> "Jet":
        if not isinstance(other, Jet):
            return Jet(tuple(c / complex(other) for c in self.coeffs))
        return jet_div(self, other)

    def __rtruediv__(self, other: Scalar) -> "Jet":
        return jet_div(Jet.constant(other, self.order), self)

    def __pow__(self, exponent: int) -> "Jet":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("jet ** only supports non-negative integers")
        out = Jet.constant(1.0, self.order)
        for _ in range(exponent):
            out = out * self
        return out


class NumericalJetError(ArithmeticError):
    """A jet operation lost its validity (realness or vanishing terms)."""


# -- module-level operations (the stable public surface) --------------------


def jet_div(a: Jet, b: Jet) -> Jet:
    """Long division of jets; requires b to have a non-vanishing constant."""
    if b.coeffs[0] == 0:
        raise ZeroDivisionError("jet division by vanishing constant term")
    p = min(a.order, b.order)
    out: list[complex] = []
    for j in range(p + 1):
        acc = a.coeffs[j]
        for i in range(1, j + 1):
            acc -= b.coeffs[i] * out[j - i]
        out.append(acc / b.coeffs[0])
    return Jet(tuple(out))


def jet_arith(a: Jet, b: Jet, op: str) -> Jet:
    """Named-op entry point: op in {add, sub, mul, div}."""
    table: dict[str, Callable[[Jet, Jet], Jet]] = {
        "add": Jet.__add__,
        "sub": Jet.__sub__,
        "mul": Jet.__mul__,
        "div": jet_div,
    }
    try:
        fn = table[op]
    except KeyError:
        raise ValueError(f"unknown jet op {op!r}") from None
    return fn(a, b)


def _on_negative_axis(v: complex) -> bool:
    return v.imag == 0.0 and v.real <= 0.0


def _jet_pow_principal(a: Jet, alpha: float) -> Jet:
    """Jet of a**alpha with the principal branch (cut on the negative axis).

    Recurrence from a * W' = alpha * a' * W:
      k a_0 W_k = sum_{j=1..k} ((alpha+1) j - k) a_j W_{k-j}.
    """
    a0 = a.coeffs[0]
    if _on_negative_axis(a0):
        raise ValueError(
            f"principal power of constant term {a0} on the branch cut"
        )
    w0 = cmath.exp(alpha * cmath.log(a0))
    out = [w0]
    for k in range(1, a.order + 1):
        acc = 0j
        for j in range(1, k + 1):
            acc += ((alpha + 1.0) * j - k) * a.coeffs[j] * out[k - j]
        out.append(acc / (k * a0))
    return Jet(tuple(out))


def jet_sqrt(a: Jet) -> Jet:
    return _jet_pow_principal(a, 0.5)


def jet_cbrt(a: Jet) -> Jet:
    return _jet_pow_principal(a, 1.0 / 3.0)


def jet_arctan(a: Jet) -> Jet:
    """Jet of arctan(a); integrates F' = a' / (1 + a^2) term by term."""
    a0 = a.coeffs[0]
    if 1 + a0 * a0 == 0:
        raise ValueError("arctan jet at a singular constant term (+/- i)")
    f0 = cmath.atan(a0) if (a0.imag != 0.0) else complex(math.atan(a0.real))
    if a.order == 0:
        return Jet((f0,))
    g = jet_div(Jet.constant(1.0, a.order - 1), (1 + a * a).truncated(a.order - 1))
    da = Jet(tuple((j + 1) * a.coeffs[j + 1] for j in range(a.order)))
    integrand = g * da
    out = [f0]
    for k in range(1, a.order + 1):
        out.append(integrand.coeffs[k - 1] / k)
    return Jet(tuple(out))


def jet_elem(a: Jet, f: str) -> Jet:
    """Named elementary function: f in {arctan, sqrt, cbrt}."""
    table = {"arctan": jet_arctan, "sqrt": jet_sqrt, "cbrt": jet_cbrt}
    try:
        fn = table[f]
    except KeyError:
        raise ValueError(f"unknown elementary jet function {f!r}") from None
    return fn(a)


def jet_compose(outer: Jet, inner: Jet) -> Jet:
    """Truncated composition outer(inner(eps)); needs inner constant term 0."""
    if inner.coeffs[0] != 0:
        raise ValueError("jet composition requires a vanishing inner constant")
    p = min(outer.order, inner.order)
    inner_t = inner.truncated(p)
    acc = Jet.constant(outer.coeffs[p], p)
    for j in range(p - 1, -1, -1):
        acc = acc * inner_t + outer.coeffs[j]
    return acc


def jet_conj_coeffs(a: Jet) -> Jet:
    """Coefficient-wise conjugate.

    For a real expansion point this is the jet of the conjugated function;
    callers are responsible for that hypothesis.
    """
    return Jet(tuple(c.conjugate() for c in a.coeffs))


def jet_real(a: Jet) -> Jet:
    """Coefficient-wise real part (valid for real expansion points)."""
    return Jet(tuple(complex(c.real) for c in a.coeffs))


def jet_imag(a: Jet) -> Jet:
    """Coefficient-wise imaginary part (valid for real expansion points)."""
    return Jet(tuple(complex(c.imag) for c in a.coeffs))


def jet_shift_down(a: Jet, m: int, tol: float = 1e-7) -> Jet:
    """Divide by eps^m a jet whose first m coefficients vanish.

    The dropped coefficients must be numerically negligible relative to the
    surviving ones; they are treated as exact structural zeros.  Used for
    removable-singularity rewrites like (f(eps) - f(0)) / eps^2.
    """
    if m <= 0:
        return a
    if a.order < m:
        raise ValueError("shift exceeds jet order")
    scale = max(abs(c) for c in a.coeffs) or 1.0
    for j in range(m):
        if abs(a.coeffs[j]) > tol * scale:
            raise NumericalJetError(
                f"coefficient {j} = {a.coeffs[j]:.3e} is not negligible "
                f"(scale {scale:.3e}); cannot shift"
            )
    return Jet(a.coeffs[m:])
