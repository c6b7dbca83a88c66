"""Variability disks of f^(k)(z0), k = 1..4, over analytic self-maps f of the
unit disk with f(0) = 0 and prescribed lower-order data at z0.

Two frames are supported.  In the canonical frame z0 = r > 0 and w0 = s >= 0
and the data are encoded by parameters (lam, mu, tau) in the closed unit disk:

    f'(r)   = c1(r, s)          + rho1(r, s) * lam
    f''(r)  = c2(r, s, lam)     + rho2(r, s, lam) * mu
    f'''(r) = c3(r, s, lam, mu) + rho3(r, s, lam, mu) * tau

and f''''(r) ranges over the closed disk with center c4 and radius rho4.  In
the general frame z0, w0 are arbitrary (|w0| < |z0|) and the data read
w_k = c_k + rho_k * (r / z0) * beta_k.  The two frames are related by the
rotation f~(z) = e^{-i xi} f(e^{i phi} z), see :func:`rotation_reduce`.
"""
from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from typing import Optional

from .errors import (
    Infeasible,
    InvalidDerivative,
    InvalidInstance,
    MissingData,
    RigidCase,
)

UNIMODULAR_TOL = 1e-12
RIGID_CONSISTENCY_TOL = 1e-9


class Feasibility(enum.Enum):
    INTERIOR = "interior"
    RIGID_AT_LAMBDA = "rigid_at_lambda"
    RIGID_AT_MU = "rigid_at_mu"
    RIGID_AT_TAU = "rigid_at_tau"
    INFEASIBLE = "infeasible"


@dataclass(frozen=True)
class Disk:
    center: complex
    radius: float

    def __post_init__(self):
        if not self.radius >= 0:
            raise ValueError(f"disk radius must be >= 0, got {self.radius}")
        object.__setattr__(self, "center", complex(self.center))
        object.__setattr__(self, "radius", float(self.radius))

    def slack(self, w: complex) -> float:
        """radius - |w - center|; non-negative for members."""
        return self.radius - abs(complex(w) - self.center)

    def contains(self, w: complex, rtol: float = 0.0, atol: float = 0.0) -> bool:
        return abs(complex(w) - self.center) <= self.radius * (1 + rtol) + atol

    def point(self, alpha: complex) -> complex:
        return self.center + self.radius * complex(alpha)


def _is_unimodular(p: Optional[complex]) -> bool:
    return p is not None and abs(p) >= 1 - UNIMODULAR_TOL


def _is_outside(p: Optional[complex]) -> bool:
    return p is not None and abs(p) > 1 + UNIMODULAR_TOL


def _check_pair(r: float, s: float) -> None:
    if not 0 < r < 1:
        raise InvalidInstance(f"need 0 < r < 1, got r = {r}")
    if not 0 <= s < r:
        raise InvalidInstance(f"need 0 <= s < r, got s = {s}, r = {r}")


@dataclass(frozen=True)
class GeneralInstance:
    """Interpolation data f(z0) = w0 and optionally f'(z0), f''(z0), f'''(z0)."""

    z0: complex
    w0: complex
    w1: Optional[complex] = None
    w2: Optional[complex] = None
    w3: Optional[complex] = None

    def __post_init__(self):
        for name in ("z0", "w0", "w1", "w2", "w3"):
            v = getattr(self, name)
            if v is not None:
                object.__setattr__(self, name, complex(v))
        if not 0 < abs(self.z0) < 1:
            raise InvalidInstance(f"need 0 < |z0| < 1, got {self.z0}")
        if not abs(self.w0) < abs(self.z0):
            raise InvalidInstance(f"need |w0| < |z0|, got w0 = {self.w0}, z0 = {self.z0}")

    @property
    def r(self) -> float:
        return abs(self.z0)

    @property
    def s(self) -> float:
        return abs(self.w0)

    @property
    def phi(self) -> float:
        return cmath.phase(self.z0)

    @property
    def xi(self) -> float:
        # phase of w0 = 0 is irrelevant; pin it to 0
        return cmath.phase(self.w0) if self.w0 != 0 else 0.0


@dataclass(frozen=True)
class CanonicalInstance:
    """Real-axis data z0 = r, w0 = s with parameters lam, mu, tau.

    Parameters left as None are unknown; disks needing them raise MissingData.
    """

    r: float
    s: float
    lam: Optional[complex] = None
    mu: Optional[complex] = None
    tau: Optional[complex] = None

    def __post_init__(self):
        object.__setattr__(self, "r", float(self.r))
        object.__setattr__(self, "s", float(self.s))
        for name in ("lam", "mu", "tau"):
            v = getattr(self, name)
            if v is not None:
                object.__setattr__(self, name, complex(v))
        _check_pair(self.r, self.s)

    @property
    def feasibility(self) -> Feasibility:
        params = (self.lam, self.mu, self.tau)
        rigid = (Feasibility.RIGID_AT_LAMBDA, Feasibility.RIGID_AT_MU, Feasibility.RIGID_AT_TAU)
        for p, tag in zip(params, rigid):
            if p is None:
                break
            if _is_outside(p):
                return Feasibility.INFEASIBLE
            if _is_unimodular(p):
                return tag
        return Feasibility.INTERIOR

    def params(self, k: int) -> tuple:
        """The k - 1 parameters that fix the order-k disk."""
        names = ("lam", "mu", "tau")[: k - 1]
        vals = tuple(getattr(self, n) for n in names)
        missing = [n for n, v in zip(names, vals) if v is None]
        if missing:
            raise MissingData(f"order {k} disk needs {', '.join(missing)}")
        return vals


@dataclass(frozen=True)
class RotationFactors:
    """by_order[n] = e^{i(n phi - xi)}, so that f~^(n)(r) = by_order[n] * f^(n)(z0)."""

    phi: float
    xi: float
    by_order: tuple

    def to_canonical(self, n: int, value: complex) -> complex:
        return self.by_order[n] * complex(value)

    def to_general(self, n: int, value: complex) -> complex:
        return self.by_order[n].conjugate() * complex(value)


def rotation_factors(phi: float, xi: float, max_order: int = 4) -> RotationFactors:
    return RotationFactors(
        phi, xi, tuple(cmath.exp(1j * (n * phi - xi)) for n in range(max_order + 1))
    )


def rotation_reduce(inst: GeneralInstance) -> tuple[float, float, RotationFactors]:
    """Return (r, s, factors) for the rotated problem z0 -> r, w0 -> s."""
    return inst.r, inst.s, rotation_factors(inst.phi, inst.xi)


def to_canonical_parameters(z0: complex, w0: complex, beta1=None, beta2=None, beta3=None):
    """Map general-frame (beta1, beta2, beta3) to canonical (lam, mu, tau).

    lam = e^{-i xi} beta1, mu = e^{i(phi - xi)} beta2, tau = e^{i(2 phi - xi)} beta3.
    """
    inst = GeneralInstance(z0, w0)
    phi, xi = inst.phi, inst.xi
    out = []
    for n, b in enumerate((beta1, beta2, beta3)):
        out.append(None if b is None else cmath.exp(1j * (n * phi - xi)) * complex(b))
    return tuple(out)


def to_general_parameters(z0: complex, w0: complex, lam=None, mu=None, tau=None):
    inst = GeneralInstance(z0, w0)
    phi, xi = inst.phi, inst.xi
    out = []
    for n, p in enumerate((lam, mu, tau)):
        out.append(None if p is None else cmath.exp(-1j * (n * phi - xi)) * complex(p))
    return tuple(out)


# ---------------------------------------------------------------------------
# canonical frame


def _radius_prefactor(k: int, r: float, s: float) -> float:
    # k! (r^2 - s^2) / (r (1 - r^2)^k)
    return math.factorial(k) * (r * r - s * s) / (r * (1 - r * r) ** k)


def envelope_AB(r: float, s: float, lam: complex, mu: complex) -> tuple[float, complex]:
    """The scalar A and the tau-free part B of the fourth-order center, c4 = A (B + ...)."""
    r2 = r * r
    p1 = 1 - abs(lam) ** 2
    A = 24 * (r2 - s * s) / (r2 * r2 * (1 - r2) ** 4)
    lc = lam.conjugate()
    q = -s * lam * lam + r2 * lam + r * mu * p1
    b = lam * (s * lam - r2) ** 2 + r * mu * p1 * (2 * r2 - 2 * s * lam - r * lc * mu)
    B = (
        lam * r2**3
        - s**3 * lam**4
        - 3 * s * s * lam * lam * q
        + (1 - r2 - 2 * s * lam) * b
        - s * q * q
        + r**3 * p1 * (lc * lc * mu**3 + 3 * r2 * mu - 3 * r * lc * mu * mu)
    )
    return A, B


def _canonical_center(k: int, r: float, s: float, params: tuple) -> complex:
    r2 = r * r
    if k == 1:
        return complex(s / r)
    lam = params[0]
    p1 = 1 - abs(lam) ** 2
    if k == 2:
        return 2 * (r2 - s * s) / (r2 * (1 - r2) ** 2) * lam * (1 - s * lam)
    mu = params[1]
    if k == 3:
        # f''' = 3 g'' + r g''' read off the interpolation conditions on g = f / z
        q = -s * lam * lam + r2 * lam + r * mu * p1
        b = lam * (s * lam - r2) ** 2 + r * mu * p1 * (2 * r2 - 2 * s * lam - r * lam.conjugate() * mu)
        return 6 * (r2 - s * s) / (r**3 * (1 - r2) ** 3) * ((1 - r2) * q + b)
    tau = params[2]
    p2 = 1 - abs(mu) ** 2
    A, B = envelope_AB(r, s, lam, mu)
    K = 1 + 2 * r2 - 2 * s * lam - 2 * r * lam.conjugate() * mu
    return A * (B + r2 * tau * p1 * p2 * (K - r * mu.conjugate() * tau))


def _radius(k: int, r: float, s: float, params: tuple) -> float:
    shrink = 1.0
    for p in params:
        shrink *= 1 - abs(p) ** 2
    return _radius_prefactor(k, r, s) * shrink


def _classify(params: tuple, strict: bool) -> bool:
    """True when some parameter is unimodular (rigid)."""
    for i, p in enumerate(params):
        if _is_outside(p):
            raise Infeasible(f"parameter {('lam', 'mu', 'tau')[i]} has modulus {abs(p)} > 1")
        if _is_unimodular(p):
            if strict:
                raise RigidCase(
                    f"|{('lam', 'mu', 'tau')[i]}| = 1: the disk degenerates to its center"
                )
            return True
    return False


def disk_order(k: int, inst: CanonicalInstance, *, strict: bool = True) -> Disk:
    """Variability disk of f^(k)(r) in the canonical frame.

    With strict=False a rigid instance returns the zero-radius disk at c_k
    instead of raising RigidCase.
    """
    if k not in (1, 2, 3, 4):
        raise ValueError(f"order must be 1..4, got {k}")
    params = inst.params(k)
    rigid = _classify(params, strict)
    center = _canonical_center(k, inst.r, inst.s, params)
    radius = 0.0 if rigid else _radius(k, inst.r, inst.s, params)
    return Disk(center, radius)


# ---------------------------------------------------------------------------
# general frame, evaluated directly from z0 and w0


def _general_center(k: int, z0: complex, w0: complex, params: tuple) -> complex:
    r = abs(z0)
    s = abs(w0)
    r2 = r * r
    d = r2 - s * s
    wb = w0.conjugate()
    if k == 1:
        return w0 / z0
    b1 = params[0]
    p1 = 1 - abs(b1) ** 2
    if k == 2:
        return 2 * d / (z0**2 * (1 - r2) ** 2) * b1 * (1 - wb * b1)
    b2 = params[1]
    if k == 3:
        cal_a = wb * wb * b1**3 - wb * (1 + r2) * b1 * b1 + r2 * b1
        inner = cal_a + z0 * b2 * p1 * (1 + r2 - 2 * wb * b1 - z0 * b1.conjugate() * b2)
        return 6 * d / (z0**3 * (1 - r2) ** 3) * inner
    b3 = params[2]
    p2 = 1 - abs(b2) ** 2
    b1c = b1.conjugate()
    q = -wb * b1 * b1 + r2 * b1 + z0 * b2 * p1
    cal_b = (
        b1 * r2**3
        - wb**3 * b1**4
        - 3 * wb * wb * b1 * b1 * q
        + (1 - r2 - 2 * wb * b1)
        * (b1 * (wb * b1 - r2) ** 2 + z0 * b2 * p1 * (2 * r2 - 2 * wb * b1 - z0 * b1c * b2))
        - wb * q * q
        + z0**3 * p1 * (b1c * b1c * b2**3 + 3 * z0.conjugate() ** 2 * b2 - 3 * z0.conjugate() * b1c * b2 * b2)
    )
    tail = z0 * z0 * b3 * p1 * p2 * (
        1 + 2 * r2 - 2 * wb * b1 - 2 * z0 * b1c * b2 - z0 * b2.conjugate() * b3
    )
    return 24 * d / (z0**4 * (1 - r2) ** 4) * (cal_b + tail)


def disk_order_general(
    k: int, inst: GeneralInstance, lam=None, mu=None, tau=None, *, strict: bool = True
) -> Disk:
    """Variability disk of f^(k)(z0) from the general-frame formulas.

    lam, mu, tau are the general-frame parameters (beta_1..beta_3), i.e. the
    data satisfy w_k = c_k + rho_k (r / z0) beta_k.
    """
    if k not in (1, 2, 3, 4):
        raise ValueError(f"order must be 1..4, got {k}")
    given = (lam, mu, tau)[: k - 1]
    if any(p is None for p in given):
        raise MissingData(f"order {k} disk needs {k - 1} parameter(s)")
    params = tuple(complex(p) for p in given)
    rigid = _classify(params, strict)
    center = _general_center(k, inst.z0, inst.w0, params)
    radius = 0.0 if rigid else _radius(k, inst.r, inst.s, params)
    return Disk(center, radius)


# ---------------------------------------------------------------------------


def invert_parameters(
    inst: GeneralInstance,
    *,
    tol: float = UNIMODULAR_TOL,
    rigid_at: Optional[int] = None,
    consistency_tol: float = RIGID_CONSISTENCY_TOL,
) -> CanonicalInstance:
    """Recover canonical (lam, mu, tau) from the data w1, w2, w3 of a general instance.

    Parameters the data do not reach are left as None.  A parameter whose
    modulus is within ``tol`` of 1 is clamped to the unit circle; the data
    above it are then forced and must match to ``consistency_tol``, and the
    parameters they would define are pinned to 0.

    ``rigid_at`` (1, 2 or 3) replaces the modulus test by prior knowledge:
    data sampled from z B with B a Blaschke product of degree d <= 3 are
    rigid exactly at level d, which rounding alone cannot resolve when the
    instance is badly conditioned.
    """
    if inst.w1 is None:
        raise MissingData("w1 is required to recover lam")
    if inst.w3 is not None and inst.w2 is None:
        raise MissingData("w3 given without w2")
    r, s, rot = rotation_reduce(inst)
    data = [None if w is None else rot.to_canonical(n, w)
            for n, w in ((1, inst.w1), (2, inst.w2), (3, inst.w3))]

    found: list = []
    rigid = False
    for level, w in enumerate(data, start=1):
        if w is None:
            break
        base = CanonicalInstance(r, s, *found)
        if rigid:
            forced = disk_order(level, base, strict=False).center
            if abs(w - forced) > consistency_tol * (1 + abs(forced)):
                raise Infeasible(
                    f"rigid case: f^({level})(z0) is forced to {forced}, data deviate by "
                    f"{abs(w - forced):.3e}"
                )
            found.append(0j)
            continue
        disk = disk_order(level, base)
        p = (w - disk.center) / disk.radius
        if rigid_at is None:
            if abs(p) > 1 + tol:
                raise Infeasible(
                    f"no self-map attains w{level}: parameter modulus {abs(p):.6g} > 1"
                )
            rigid = abs(p) >= 1 - tol
        else:
            rigid = level == rigid_at
            if not rigid and abs(p) >= 1:
                raise Infeasible(
                    f"parameter {level} has modulus {abs(p):.6g} but rigidity is expected at "
                    f"level {rigid_at}"
                )
        if rigid:
            p = p / abs(p)
        found.append(p)
    return CanonicalInstance(r, s, *found)


def rogosinski_disk(z: complex, d0: complex) -> Disk:
    """Region of values of f(z) over f with f(0) = 0 and f'(0) = d0."""
    z = complex(z)
    d0 = complex(d0)
    if not 0 < abs(z) < 1:
        raise InvalidInstance(f"need 0 < |z| < 1, got {z}")
    if abs(d0) >= 1:
        raise InvalidDerivative(f"need |f'(0)| < 1, got {abs(d0)}")
    az2 = abs(z) ** 2
    denom = 1 - az2 * abs(d0) ** 2
    return Disk(z * d0 * (1 - az2) / denom, az2 * (1 - abs(d0) ** 2) / denom)
