"""Truncated complex Taylor series ("jets") at a fixed expansion point.

A jet of order N at center z0 stores a_0..a_N with a_k = f^(k)(z0)/k!.
Compositions of disk automorphisms and Blaschke factors are evaluated by
plain jet arithmetic, which gives derivatives up to order N exact up to
rounding. Every closed-form disk formula in the package is checked against
this module.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import CenterMismatch, DivisionBySingularJet, InvalidOrder, OrderExceeded

DEFAULT_ORDER = 8
SINGULAR_THRESHOLD = 1e-14


@dataclass(frozen=True, eq=False)
class Jet:
    center: complex
    coefficients: np.ndarray = field(repr=False)

    def __post_init__(self):
        c = np.array(self.coefficients, dtype=complex)
        if c.ndim != 1 or c.size < 1:
            raise InvalidOrder("a jet needs at least one coefficient")
        c.setflags(write=False)
        object.__setattr__(self, "coefficients", c)
        object.__setattr__(self, "center", complex(self.center))

    @property
    def order(self) -> int:
        return self.coefficients.size - 1

    @property
    def value(self) -> complex:
        return complex(self.coefficients[0])

    def __repr__(self):
        return f"Jet(center={self.center!r}, order={self.order}, coefficients={list(self.coefficients)!r})"

    # arithmetic; plain numbers are promoted to constant jets
    def _coerce(self, other) -> Jet:
        if isinstance(other, Jet):
            return other
        return jet_constant(other, self.center, self.order)

    def __add__(self, other):
        other = self._coerce(other)
        n = _shared_order(self, other)
        return Jet(self.center, self.coefficients[: n + 1] + other.coefficients[: n + 1])

    __radd__ = __add__

    def __neg__(self):
        return Jet(self.center, -self.coefficients)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, float, complex, np.number)):
            return Jet(self.center, self.coefficients * other)
        return jet_multiply(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, float, complex, np.number)):
            return Jet(self.center, self.coefficients / other)
        return jet_divide(self, other)

    def __rtruediv__(self, other):
        return jet_divide(self._coerce(other), self)

    def conj_coefficients(self) -> np.ndarray:
        return np.conj(self.coefficients)

    def derivatives(self) -> np.ndarray:
        """f(center), f'(center), ..., f^(N)(center)."""
        factorials = np.array([math.factorial(k) for k in range(self.order + 1)], dtype=float)
        return self.coefficients * factorials


def _shared_order(a: Jet, b: Jet) -> int:
    if a.center != b.center:
        raise CenterMismatch(f"jets centered at {a.center} and {b.center}")
    return min(a.order, b.order)


def jet_variable(center: complex, order: int = DEFAULT_ORDER) -> Jet:
    """Jet of the identity map z -> z."""
    if order < 1:
        raise InvalidOrder(f"order must be >= 1, got {order}")
    c = np.zeros(order + 1, dtype=complex)
    c[0] = center
    c[1] = 1.0
    return Jet(center, c)


def jet_constant(value: complex, center: complex, order: int = DEFAULT_ORDER) -> Jet:
    if order < 0:
        raise InvalidOrder(f"order must be >= 0, got {order}")
    c = np.zeros(order + 1, dtype=complex)
    c[0] = value
    return Jet(center, c)


def jet_multiply(a: Jet, b: Jet) -> Jet:
    n = _shared_order(a, b)
    return Jet(a.center, np.convolve(a.coefficients[: n + 1], b.coefficients[: n + 1])[: n + 1])


def jet_divide(a: Jet, b: Jet) -> Jet:
    n = _shared_order(a, b)
    bc = b.coefficients
    b0 = bc[0]
    if abs(b0) < SINGULAR_THRESHOLD:
        raise DivisionBySingularJet(f"|b.a0| = {abs(b0):.3e} below {SINGULAR_THRESHOLD}")
    ac = a.coefficients
    out = np.zeros(n + 1, dtype=complex)
    for k in range(n + 1):
        acc = ac[k]
        for j in range(1, k + 1):
            acc -= bc[j] * out[k - j]
        out[k] = acc / b0
    return Jet(a.center, out)


def mobius_apply_jet(a: complex, j: Jet) -> Jet:
    """Jet of T_a o j, where T_a(w) = (w + a) / (1 + conj(a) w)."""
    a = complex(a)
    if abs(a) >= 1.0:
        raise ValueError(f"Mobius parameter must lie in the open unit disk, got |a| = {abs(a)}")
    if a == 0:
        return j
    denom = 1.0 + a.conjugate() * j
    if abs(denom.value) < SINGULAR_THRESHOLD:
        raise DivisionBySingularJet("1 + conj(a) j(center) vanishes")
    return jet_divide(j + a, denom)


def jet_compose(outer: Jet, inner: Jet) -> Jet:
    """Jet of outer o inner, where inner(inner.center) == outer.center.

    The result is centered at inner.center.  No re-centering of the outer
    series is performed, so the inner value must match the outer center.
    """
    if not np.isclose(inner.value, outer.center, rtol=0, atol=1e-13):
        raise CenterMismatch(
            f"inner value {inner.value} does not match outer center {outer.center}"
        )
    n = min(outer.order, inner.order)
    shifted = inner.coefficients[: n + 1].copy()
    shifted[0] = 0.0
    delta = Jet(inner.center, shifted)
    # Horner in the zero-constant series delta
    acc = jet_constant(outer.coefficients[n], inner.center, n)
    for k in range(n - 1, -1, -1):
        acc = acc * delta + outer.coefficients[k]
    return acc


def jet_derivative(j: Jet, n: int) -> complex:
    if n < 0 or n > j.order:
        raise OrderExceeded(f"derivative {n} requested from a jet of order {j.order}")
    return complex(math.factorial(n) * j.coefficients[n])


@dataclass(frozen=True)
class BlaschkeProduct:
    """e^{i rotation} * prod (z - z_j) / (1 - conj(z_j) z)."""

    rotation: float = 0.0
    zeros: tuple = ()

    def __post_init__(self):
        zs = tuple(complex(z) for z in self.zeros)
        for z in zs:
            if abs(z) >= 1.0:
                raise ValueError(f"Blaschke zero {z} is not inside the unit disk")
        object.__setattr__(self, "zeros", zs)
        object.__setattr__(self, "rotation", float(self.rotation))

    @property
    def degree(self) -> int:
        return len(self.zeros)

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        out = np.full(z.shape, np.exp(1j * self.rotation), dtype=complex)
        for zj in self.zeros:
            out = out * (z - zj) / (1.0 - np.conj(zj) * z)
        return out if out.ndim else complex(out)


def blaschke_jet(B: BlaschkeProduct, center: complex, order: int = DEFAULT_ORDER) -> Jet:
    if abs(center) >= 1.0:
        raise ValueError(f"center {center} is not inside the unit disk")
    z = jet_variable(center, order)
    acc = jet_constant(np.exp(1j * B.rotation), center, order)
    for zj in B.zeros:
        acc = acc * mobius_apply_jet(-zj, z)
    return acc


def jet_from_derivatives(center: complex, derivs: Sequence[complex]) -> Jet:
    """Inverse of Jet.derivatives()."""
    c = [complex(d) / math.factorial(k) for k, d in enumerate(derivs)]
    return Jet(center, np.array(c))
