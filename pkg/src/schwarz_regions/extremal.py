"""Extremal self-maps f(z) = z g(z) and a seeded sampler of Blaschke self-maps.

The extremal g is a nested composition of disk automorphisms

    g = T_{u0}( X T_{lam0}( X T_{mu0}( X T_{tau0}( alpha X ))))   X = T_{-z0}(z)

truncated at the first unimodular parameter (cases 1-3) or carried to the
full depth with a free alpha in the closed disk (case 4).  Derivatives at z0
are only ever obtained by jet evaluation; no closed-form shortcut is used so
that the disk formulas stay independently checkable.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .dieudonne import (
    UNIMODULAR_TOL,
    CanonicalInstance,
    Feasibility,
    GeneralInstance,
    invert_parameters,
    to_canonical_parameters,
    to_general_parameters,
)
from .errors import Infeasible, MissingData
from .jets import (
    DEFAULT_ORDER,
    BlaschkeProduct,
    Jet,
    blaschke_jet,
    jet_variable,
    mobius_apply_jet,
)

_CASE_BY_FEASIBILITY = {
    Feasibility.RIGID_AT_LAMBDA: 1,
    Feasibility.RIGID_AT_MU: 2,
    Feasibility.RIGID_AT_TAU: 3,
    Feasibility.INTERIOR: 4,
}


@dataclass(frozen=True)
class ExtremalSpec:
    case: int
    z0: complex
    u0: complex
    lambda0: complex
    mu0: complex = 0j
    tau0: complex = 0j
    alpha: complex = 0j

    @property
    def nesting(self) -> tuple:
        """Automorphism parameters from outside in; the last entry multiplies X."""
        full = (self.lambda0, self.mu0, self.tau0, self.alpha)
        return full[: self.case]

    @property
    def boundary_attaining(self) -> bool:
        # cases 1-3 have a degenerate disk, so the single value is its boundary
        return self.case < 4 or abs(self.alpha) >= 1 - UNIMODULAR_TOL


def build_extremal(
    inst: Union[CanonicalInstance, GeneralInstance],
    alpha: complex = 0j,
    *,
    params: tuple | None = None,
) -> ExtremalSpec:
    """Extremal map for a feasible instance.

    A GeneralInstance takes its parameters either from ``params`` (general
    frame beta_1..beta_3) or, when omitted, from its data w1..w3.
    """
    alpha = complex(alpha)
    if abs(alpha) > 1 + UNIMODULAR_TOL:
        raise ValueError(f"alpha must lie in the closed unit disk, got |alpha| = {abs(alpha)}")

    if isinstance(inst, CanonicalInstance):
        canon = inst
        z0 = complex(inst.r)
        u0 = inst.s / inst.r
        betas = (canon.lam, canon.mu, canon.tau)
    else:
        z0 = inst.z0
        u0 = inst.w0 / inst.z0
        if params is None:
            canon = invert_parameters(inst)
            betas = to_general_parameters(inst.z0, inst.w0, canon.lam, canon.mu, canon.tau)
        else:
            betas = tuple(params) + (None,) * (3 - len(params))
            canon = CanonicalInstance(
                inst.r, inst.s, *to_canonical_parameters(inst.z0, inst.w0, *betas)
            )

    feas = canon.feasibility
    if feas is Feasibility.INFEASIBLE:
        raise Infeasible("instance parameters leave the closed unit disk")
    case = _CASE_BY_FEASIBILITY[feas]
    needed = betas[: min(case, 3)]
    if any(b is None for b in needed):
        raise MissingData(f"case {case} extremal needs {min(case, 3)} parameter(s)")

    rot = (abs(z0) / z0) ** 2  # r^2 / z0^2
    scaled = [rot * b for b in needed] + [0j] * (3 - len(needed))
    return ExtremalSpec(
        case=case,
        z0=z0,
        u0=u0,
        lambda0=scaled[0],
        mu0=scaled[1],
        tau0=scaled[2],
        alpha=alpha if case == 4 else 0j,
    )


def extremal_g_jet(spec: ExtremalSpec, order: int = DEFAULT_ORDER) -> Jet:
    """Jet of g = f / z at z0."""
    X = mobius_apply_jet(-spec.z0, jet_variable(spec.z0, order))
    *autos, last = spec.nesting
    inner = last * X
    for p in reversed(autos):
        inner = X * mobius_apply_jet(p, inner)
    return mobius_apply_jet(spec.u0, inner)


def extremal_jet(spec: ExtremalSpec, order: int = DEFAULT_ORDER) -> Jet:
    return jet_variable(spec.z0, order) * extremal_g_jet(spec, order)


def evaluate_extremal(spec: ExtremalSpec, order: int = DEFAULT_ORDER) -> np.ndarray:
    """f(z0), f'(z0), ..., f^(order)(z0) for the extremal map."""
    if order < 4:
        raise ValueError(f"order must be >= 4, got {order}")
    return extremal_jet(spec, order).derivatives()


# ---------------------------------------------------------------------------
# random self-maps


@dataclass(frozen=True)
class SelfMapSample:
    blaschke: BlaschkeProduct
    z0: complex
    attained: tuple  # f(z0), f'(z0), ..., f''''(z0) for f = z * blaschke

    @property
    def instance(self) -> GeneralInstance:
        w0, w1, w2, w3 = self.attained[:4]
        return GeneralInstance(self.z0, w0, w1, w2, w3)


def random_blaschke(rng: np.random.Generator, degree: int, max_modulus: float = 0.95) -> BlaschkeProduct:
    # uniform by area in |z| <= max_modulus
    rad = max_modulus * np.sqrt(rng.random(degree))
    ang = rng.uniform(-np.pi, np.pi, degree)
    rotation = float(rng.uniform(-np.pi, np.pi))
    return BlaschkeProduct(rotation, tuple(rad * np.exp(1j * ang)))


def selfmap_jet(B: BlaschkeProduct, z0: complex, order: int = DEFAULT_ORDER) -> Jet:
    return jet_variable(z0, order) * blaschke_jet(B, z0, order)


def sample_selfmap(seed: int, degree: int, z0: complex, order: int = DEFAULT_ORDER) -> SelfMapSample:
    """Reproducible f = z B with B a random Blaschke product of the given degree."""
    if degree < 1:
        raise ValueError(f"degree must be >= 1, got {degree}")
    rng = np.random.default_rng(seed)
    B = random_blaschke(rng, degree)
    derivs = selfmap_jet(B, z0, order).derivatives()
    return SelfMapSample(B, complex(z0), tuple(complex(d) for d in derivs[:5]))
