"""Peschl invariant derivatives D_1..D_4 and the fourth-order Schur-type inequality.

D_n g(z) is n! times the n-th Taylor coefficient at 0 of
T_{-g(z)} o g o T_z, the self-map renormalised so that both the point and
its image sit at the origin.  Two evaluation routes are provided: explicit
formulas in g(z), ..., g''''(z), and the renormalised jet itself.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidOrder, NotASelfMapValue
from .jets import Jet, jet_compose, jet_variable, mobius_apply_jet

EQUALITY_RTOL = 1e-9


@dataclass(frozen=True)
class PeschlDerivatives:
    d1: complex
    d2: complex
    d3: complex
    d4: complex
    at: complex
    value: complex

    def as_tuple(self) -> tuple:
        return (self.d1, self.d2, self.d3, self.d4)


def _check(g: Jet, z: complex) -> tuple:
    if g.order < 4:
        raise InvalidOrder(f"Peschl derivatives up to D_4 need a jet of order >= 4, got {g.order}")
    if abs(z) >= 1:
        raise ValueError(f"evaluation point {z} is not inside the unit disk")
    w = g.value
    if abs(w) >= 1:
        raise NotASelfMapValue(f"|g(z)| = {abs(w)} >= 1")
    return w


def peschl_derivatives(g: Jet, z: complex | None = None) -> PeschlDerivatives:
    """D_1..D_4 of g at z from the explicit formulas in g, g', ..., g''''."""
    z = g.center if z is None else complex(z)
    w = _check(g, z)
    d = g.derivatives()
    g1, g2, g3, g4 = d[1], d[2], d[3], d[4]
    zb = z.conjugate()
    wb = w.conjugate()
    x = 1 - abs(z) ** 2
    y = 1 - abs(w) ** 2

    D1 = x * g1 / y
    D2 = x**2 / y * (g2 - 2 * zb * g1 / x + 2 * wb * g1**2 / y)
    D3 = x**3 / y * (
        g3
        - 6 * zb * g2 / x
        + 6 * wb * g1 * g2 / y
        + 6 * zb**2 * g1 / x**2
        - 12 * zb * wb * g1**2 / (x * y)
        + 6 * wb**2 * g1**3 / y**2
    )
    D4 = x**4 / y * (
        g4
        - 12 * zb * g3 / x
        + 6 * wb * g2**2 / y
        + 36 * zb**2 * g2 / x**2
        + 24 * wb**3 * g1**4 / y**3
        - 72 * zb * wb**2 * g1**3 / (x * y**2)
        + 72 * zb**2 * wb * g1**2 / (x**2 * y)
        - 24 * zb**3 * g1 / x**3
        + 8 * wb * g1 * g3 / y
        + 36 * wb**2 * g1**2 * g2 / y**2
        - 72 * zb * wb * g1 * g2 / (x * y)
    )
    return PeschlDerivatives(complex(D1), complex(D2), complex(D3), complex(D4), z, w)


def peschl_derivatives_by_renormalization(g: Jet) -> PeschlDerivatives:
    """D_1..D_4 read off the jet of T_{-g(z)} o g o T_z at 0."""
    z = g.center
    w = _check(g, z)
    order = g.order
    inner = mobius_apply_jet(z, jet_variable(0j, order))
    h = mobius_apply_jet(-w, jet_compose(g, inner))
    c = h.coefficients
    ds = [complex(math.factorial(n) * c[n]) for n in range(1, 5)]
    return PeschlDerivatives(*ds, z, w)


def cho_inequality(p: PeschlDerivatives) -> tuple[float, float]:
    """(lhs, rhs) of the fourth-order inequality; lhs <= rhs for every self-map.

    lhs is the modulus of the complex combination on the left.  Equality holds
    exactly for Blaschke products of degree at most 4.
    """
    a1 = p.d1
    a2 = p.d2 / 2
    a3 = p.d3 / 6
    a4 = p.d4 / 24
    x = 1 - abs(a1) ** 2
    combo = (
        a4 * (x * x - abs(a2) ** 2)
        + 2 * a1.conjugate() * a2 * a3 * x
        + a1.conjugate() ** 2 * a2**3
        + a2.conjugate() * a3**2
    )
    rhs = (
        x**3
        - x * (abs(a3) ** 2 + 2 * abs(a2) ** 2)
        + abs(a2) ** 4
        - 2 * (a1 * a2.conjugate() ** 2 * a3).real
    )
    return abs(combo), float(rhs)


def cho_holds(p: PeschlDerivatives, rtol: float = EQUALITY_RTOL) -> bool:
    lhs, rhs = cho_inequality(p)
    return lhs <= rhs + rtol * max(1.0, abs(rhs))


def cho_is_equality(p: PeschlDerivatives, rtol: float = EQUALITY_RTOL) -> bool:
    lhs, rhs = cho_inequality(p)
    return abs(lhs - rhs) <= rtol * max(1.0, abs(rhs))
