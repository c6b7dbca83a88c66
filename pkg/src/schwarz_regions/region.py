"""The region of f''''(r) when f(r), f'(r), f''(r) are fixed and f'''(r) is free.

For fixed (r, s, lam, mu) the fourth-derivative disks sweep, as tau runs over
the closed unit disk, the set

    V(r, s, lam, mu) = A (B + C * U),   U = union of closed disks D(c(z), rho(z)), |z| <= 1,

with c(z) = z (1 - eta z) and rho(z) = t (1 - |z|^2).  The boundary of U is
traced one outward normal direction theta at a time: the supporting point is
either an interior critical point of the disk family (envelope branch) or a
point of the curve c(e^{i psi}) (disk branch), in which case the multiplier
t_theta solves |x e^{i theta} - conj(eta)| = 2 (x^2 - |eta|^2).
"""
from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import ConvexHull

from .dieudonne import CanonicalInstance, disk_order, envelope_AB
from .errors import ConvexityViolation, DegenerateFrame, SolverBracketFailure
from .extremal import ExtremalSpec, build_extremal, evaluate_extremal

DEGENERATE_K = 1e-10
ROOT_FTOL = 1e-13
CONVEXITY_TOL = 1e-9
TIE_RTOL = 1e-12


class BoundaryTag(enum.Enum):
    ENVELOPE = "envelope"
    DISK = "disk"


@dataclass(frozen=True)
class EnvelopeFrame:
    A: float
    B: complex
    C: complex
    eta: complex
    t: float
    K: complex
    r: float
    s: float
    lam: complex
    mu: complex

    def c(self, zeta):
        return zeta * (1 - self.eta * zeta)

    def rho(self, zeta):
        return self.t * (1 - np.abs(zeta) ** 2)

    def to_region(self, v):
        """Map a point of U to the corresponding value of f''''(r)."""
        return self.A * (self.B + self.C * v)


def envelope_frame(r: float, s: float, lam: complex, mu: complex) -> EnvelopeFrame:
    lam = complex(lam)
    mu = complex(mu)
    if not 0 <= s < r < 1:
        raise ValueError(f"need 0 <= s < r < 1, got r = {r}, s = {s}")
    if abs(lam) >= 1 or abs(mu) >= 1:
        raise ValueError("lam and mu must lie in the open unit disk")
    K = 1 + 2 * r * r - 2 * s * lam - 2 * r * lam.conjugate() * mu
    if abs(K) < DEGENERATE_K:
        raise DegenerateFrame(f"|K| = {abs(K):.3e}: the envelope parametrisation is undefined")
    A, B = envelope_AB(r, s, lam, mu)
    C = r * r * (1 - abs(lam) ** 2) * (1 - abs(mu) ** 2) * K
    return EnvelopeFrame(
        A=A, B=B, C=C, eta=r * mu.conjugate() / K, t=r / abs(K), K=K, r=r, s=s, lam=lam, mu=mu
    )


def solve_t_theta(eta: complex, theta: float) -> float:
    """Root x > |eta| of 2 (x^2 - |eta|^2) = |x e^{i theta} - conj(eta)|.

    Regula falsi with the Illinois modification inside the bracket
    [max(|eta|, 1/2 - |eta|), |eta| + 1]; a bisection step is taken whenever
    the secant point falls outside the open bracket.

    The root obeys 2 (x - |eta|)(x + |eta|) >= x - |eta|, hence x + |eta| >= 1/2.
    Starting the bracket there keeps the solver away from x = |eta|, where F
    is tiny for small |eta| and a residual test would stop spuriously.
    """
    eta = complex(eta)
    a_eta = abs(eta)
    e = cmath.exp(1j * theta)
    eb = eta.conjugate()

    def F(x):
        return 2 * (x * x - a_eta * a_eta) - abs(x * e - eb)

    a, b = max(a_eta, 0.5 - a_eta), a_eta + 1.0
    fa, fb = F(a), F(b)
    if not (fa <= 0 < fb):
        raise SolverBracketFailure(f"no sign change on [{a}, {b}]: F = ({fa}, {fb})")
    side = 0
    x = a
    # iterate to rounding level; ROOT_FTOL is the guaranteed residual bound
    ftol = 8 * np.spacing(1.0 + b * b)
    for _ in range(200 if fa != 0 else 0):
        x = (a * fb - b * fa) / (fb - fa)
        if not a < x < b:
            x = 0.5 * (a + b)
        fx = F(x)
        if abs(fx) <= ftol or b - a <= 4 * np.spacing(b):
            break
        if fx > 0:
            b, fb = x, fx
            if side == 1:
                fa *= 0.5
            side = 1
        else:
            a, fa = x, fx
            if side == -1:
                fb *= 0.5
            side = -1
    if abs(F(x)) > ROOT_FTOL:
        raise SolverBracketFailure(f"residual {abs(F(x)):.3e} above {ROOT_FTOL} at theta = {theta}")
    if not x > a_eta:
        raise SolverBracketFailure(f"root collapsed onto |eta| = {a_eta} at theta = {theta}")
    return float(x)


@dataclass(frozen=True)
class BoundaryPoint:
    theta: float
    gamma: complex
    zeta: complex
    t_theta: float
    tag: BoundaryTag


def boundary_point(frame: EnvelopeFrame, theta: float) -> BoundaryPoint:
    eta, t = frame.eta, frame.t
    e = cmath.exp(1j * theta)
    eb = eta.conjugate()
    a2 = abs(eta) ** 2
    lhs = abs(t * e - eb)
    rhs = 2 * (t * t - a2)
    # ties go to the disk branch; both branches agree there
    if lhs >= rhs * (1 - TIE_RTOL):
        tt = solve_t_theta(eta, theta)
        zeta = (tt * e - eb) / (2 * (tt * tt - a2))
        gamma = frame.to_region(frame.c(zeta))
        return BoundaryPoint(theta, complex(gamma), complex(zeta), tt, BoundaryTag.DISK)
    zeta = (t * e - eb) / (2 * (t * t - a2))
    gamma = frame.to_region(frame.c(zeta) + frame.rho(zeta) * e)
    return BoundaryPoint(theta, complex(gamma), complex(zeta), float(t), BoundaryTag.ENVELOPE)


@dataclass(frozen=True)
class RegionBoundary:
    frame: EnvelopeFrame
    points: tuple
    closed: bool = True

    @property
    def gammas(self) -> np.ndarray:
        return np.array([p.gamma for p in self.points])

    @property
    def thetas(self) -> np.ndarray:
        return np.array([p.theta for p in self.points])


def boundary_thetas(n: int) -> np.ndarray:
    """n uniform angles in (-pi, pi], increasing."""
    return -math.pi + 2 * math.pi * (np.arange(n) + 1) / n


def trace_boundary(frame: EnvelopeFrame, n: int = 256) -> RegionBoundary:
    if n < 16:
        raise ValueError(f"need at least 16 boundary samples, got {n}")
    pts = tuple(boundary_point(frame, float(th)) for th in boundary_thetas(n))
    out = RegionBoundary(frame, pts, True)
    defect = convexity_defect(out)
    if defect > CONVEXITY_TOL:
        raise ConvexityViolation(f"traced boundary has convexity defect {defect:.3e}")
    return out


def convexity_defect(boundary) -> float:
    """Largest clockwise turn of a counter-clockwise polygon, over diameter squared."""
    z = boundary.gammas if isinstance(boundary, RegionBoundary) else np.asarray(boundary, complex)
    if z.size < 8:
        raise ValueError("need at least 8 vertices")
    e_prev = z - np.roll(z, 1)
    e_next = np.roll(z, -1) - z
    cross = (np.conj(e_prev) * e_next).imag
    diam = _diameter(z)
    if diam == 0:
        return 0.0
    return float(max(0.0, -cross.min()) / diam**2)


def _diameter(z: np.ndarray) -> float:
    z = np.asarray(z, complex)
    if z.size > 2000:
        z = convex_hull(z)
    return float(np.abs(z[:, None] - z[None, :]).max())


# ---------------------------------------------------------------------------
# extremal maps attaining the boundary


def boundary_extremal(frame: EnvelopeFrame, point: BoundaryPoint) -> ExtremalSpec:
    """The extremal self-map whose fourth derivative at r is point.gamma."""
    if point.tag is BoundaryTag.ENVELOPE:
        inst = CanonicalInstance(frame.r, frame.s, frame.lam, frame.mu, point.zeta)
        alpha = cmath.exp(1j * (point.theta + cmath.phase(frame.C)))
        return build_extremal(inst, alpha)
    zeta = point.zeta / abs(point.zeta)
    return build_extremal(CanonicalInstance(frame.r, frame.s, frame.lam, frame.mu, zeta))


# ---------------------------------------------------------------------------
# brute-force oracle


def convex_hull(points) -> np.ndarray:
    """Counter-clockwise hull vertices of a planar point cloud given as complex numbers."""
    z = np.asarray(points, complex).ravel()
    xy = np.column_stack([z.real, z.imag])
    hull = ConvexHull(xy)
    return z[hull.vertices]


def polygon_area(z) -> float:
    z = np.asarray(z, complex)
    return float(0.5 * (np.conj(z) * np.roll(z, -1)).imag.sum())


def distance_to_convex_region(p: np.ndarray, poly: np.ndarray) -> np.ndarray:
    """Distance from each point of p to the closed convex polygon poly (ccw)."""
    a = poly
    b = np.roll(poly, -1)
    ab = b - a
    ap = p[:, None] - a[None, :]
    inside = ((np.conj(ab)[None, :] * ap).imag >= 0).all(axis=1)
    u = np.clip((np.conj(ab)[None, :] * ap).real / np.abs(ab)[None, :] ** 2, 0.0, 1.0)
    d = np.abs(ap - u * ab[None, :]).min(axis=1)
    return np.where(inside, 0.0, d)


def hausdorff_convex(P, Q) -> float:
    """Hausdorff distance between the convex regions bounded by two ccw polygons."""
    P = np.asarray(P, complex)
    Q = np.asarray(Q, complex)
    return float(max(distance_to_convex_region(P, Q).max(), distance_to_convex_region(Q, P).max()))


@dataclass(frozen=True)
class BruteForceRegion:
    hull: np.ndarray = field(repr=False)
    resolution: int
    n_alpha: int
    n_points: int
    spot_check_error: float

    @property
    def area(self) -> float:
        return polygon_area(self.hull)

    @property
    def diameter(self) -> float:
        return _diameter(self.hull)


def tau_grid(resolution: int) -> np.ndarray:
    """Polar grid of the closed unit disk with `resolution` rings.

    Ring k has radius k/n and carries 4n equally spaced angles, so the arc
    spacing on the outer ring matches the radial spacing up to a factor pi/2.
    Grids are nested under doubling of n.
    """
    radii = np.arange(1, resolution + 1) / resolution
    angles = 2 * np.pi * np.arange(4 * resolution) / (4 * resolution)
    grid = (radii[:, None] * np.exp(1j * angles)[None, :]).ravel()
    return np.concatenate([[0j], grid])


def brute_force_region(
    r: float,
    s: float,
    lam: complex,
    mu: complex,
    resolution: int = 64,
    n_alpha: int | None = None,
    spot_checks: int = 8,
) -> BruteForceRegion:
    """Convex hull of c4 + rho4 alpha over a tau grid and alpha on the unit circle.

    Works for every feasible (lam, mu), including frames where the envelope
    parametrisation degenerates.
    """
    if resolution < 16:
        raise ValueError(f"resolution must be >= 16, got {resolution}")
    n_alpha = 2 * resolution if n_alpha is None else n_alpha
    taus = tau_grid(resolution)
    centers = np.empty(taus.size, complex)
    radii = np.empty(taus.size)
    for i, tau in enumerate(taus):
        d = disk_order(4, CanonicalInstance(r, s, lam, mu, complex(tau)), strict=False)
        centers[i] = d.center
        radii[i] = d.radius
    alphas = np.exp(2j * np.pi * np.arange(n_alpha) / n_alpha)

    # hull of the union = hull of the per-chunk hulls; keeps memory bounded
    keep = []
    chunk = max(1, 2_000_000 // n_alpha)
    for lo in range(0, taus.size, chunk):
        pts = centers[lo : lo + chunk, None] + radii[lo : lo + chunk, None] * alphas[None, :]
        keep.append(convex_hull(pts))
    hull = convex_hull(np.concatenate(keep))

    worst = 0.0
    if spot_checks:
        idx = np.linspace(0, taus.size - 1, spot_checks).astype(int)
        for i, j in zip(idx, np.arange(spot_checks) * 7 % n_alpha):
            inst = CanonicalInstance(r, s, lam, mu, complex(taus[i]))
            f4 = evaluate_extremal(build_extremal(inst, complex(alphas[j])))[4]
            pred = centers[i] + radii[i] * alphas[j]
            worst = max(worst, abs(f4 - pred) / max(1.0, abs(pred)))
    return BruteForceRegion(hull, resolution, n_alpha, int(taus.size * n_alpha), float(worst))
