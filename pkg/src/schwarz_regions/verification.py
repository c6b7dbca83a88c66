"""Property suites shared by the `verify` command, the scripts and the acceptance tests.

Every suite draws its samples from ``np.random.default_rng((seed, suite_id, i))``
so that a failing sample can be replayed from (seed, suite, index) alone.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import asdict, dataclass, field
from typing import Callable, Optional

import numpy as np

from .dieudonne import (
    CanonicalInstance,
    GeneralInstance,
    disk_order,
    disk_order_general,
    invert_parameters,
    rotation_factors,
    to_canonical_parameters,
)
from .errors import SchwarzRegionsError
from .extremal import build_extremal, evaluate_extremal, random_blaschke
from .jets import blaschke_jet, jet_variable, mobius_apply_jet
from .peschl import cho_inequality, peschl_derivatives
from .region import (
    BoundaryTag,
    boundary_extremal,
    brute_force_region,
    convexity_defect,
    envelope_frame,
    hausdorff_convex,
    solve_t_theta,
    trace_boundary,
)

MEMBERSHIP_RTOL = 1e-9
ATTAIN_RTOL = 1e-9
TRACE_ATTAIN_RTOL = 1e-8
PESCHL_RTOL = 1e-9
ROTATION_RTOL = 1e-10
ROOT_TOL = 1e-12
HAUSDORFF_RTOL = 1e-3
MAX_SAMPLE_MODULUS = 0.9  # |z0| and the free parameters stay inside this radius

SUITE_IDS = {
    "membership": 1,
    "strictness": 2,
    "attainment": 3,
    "lower_order": 4,
    "peschl_equality": 5,
    "peschl_strict": 6,
    "rotation": 7,
    "root_solver": 8,
    "boundary": 9,
}


@dataclass
class SuiteResult:
    name: str
    trials: int
    failures: int
    worst: float
    tolerance: float
    worst_label: str
    first_failure: Optional[dict] = None

    @property
    def passed(self) -> bool:
        return self.trials > 0 and self.failures == 0

    def as_dict(self) -> dict:
        d = asdict(self)
        d["passed"] = self.passed
        return d


@dataclass
class VerifyConfig:
    trials: int = 1000
    seed: int = 0
    max_degree: int = 6
    z0: Optional[complex] = None
    w0: Optional[complex] = None
    # sub-suite sizes are capped so the whole run stays at desk scale
    attainment_cap: int = 100
    peschl_cap: int = 1000
    boundary_cap: int = 20
    thetas_per_instance: int = 16

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if not 1 <= self.max_degree:
            raise ValueError(f"max_degree must be >= 1, got {self.max_degree}")
        if self.w0 is not None and self.z0 is None:
            raise ValueError("w0 needs z0")
        if self.z0 is not None:
            GeneralInstance(self.z0, 0j if self.w0 is None else self.w0)


def _rng(seed: int, suite: str, i: int) -> np.random.Generator:
    return np.random.default_rng((seed, SUITE_IDS[suite], i))


def _disk_point(rng: np.random.Generator, rmax: float = MAX_SAMPLE_MODULUS) -> complex:
    return complex(rmax * math.sqrt(rng.random()) * cmath.exp(1j * rng.uniform(-math.pi, math.pi)))


def _random_z0(rng: np.random.Generator) -> complex:
    # keep clear of 0, where the problem degenerates
    r = math.sqrt(rng.uniform(0.05**2, MAX_SAMPLE_MODULUS**2))
    return complex(r * cmath.exp(1j * rng.uniform(-math.pi, math.pi)))


def draw_selfmap_data(
    rng: np.random.Generator, degree: int, z0: Optional[complex] = None, w0: Optional[complex] = None
) -> tuple:
    """(z0, [f(z0), ..., f''''(z0)]) for f = z g, g a Blaschke product of the given degree.

    With w0 prescribed, g = T_{w0/z0}(T_{-z0} B') with deg B' = degree - 1, so
    that f(z0) = w0 holds exactly by construction.
    """
    z0 = _random_z0(rng) if z0 is None else complex(z0)
    if w0 is None:
        g = blaschke_jet(random_blaschke(rng, degree), z0, 4)
    else:
        X = mobius_apply_jet(-z0, jet_variable(z0, 4))
        inner = X * blaschke_jet(random_blaschke(rng, degree - 1), z0, 4)
        g = mobius_apply_jet(complex(w0) / z0, inner)
    f = jet_variable(z0, 4) * g
    return z0, [complex(d) for d in f.derivatives()]


def _radius_scale(k: int, r: float, s: float) -> float:
    # radius of the order-k disk with every parameter at 0
    return math.factorial(k) * (r * r - s * s) / (r * (1 - r * r) ** k)


def membership_slacks(z0: complex, derivs: list, degree: int) -> list:
    """Normalized slacks (rho_k - |f^(k) - c_k|) / rho_k_max for k = 1..4.

    The data are rotated to the canonical frame, (lam, mu, tau) are recovered
    from w1..w3, and each order is tested against its own disk.
    """
    inst = GeneralInstance(z0, *derivs[:4])
    canon = invert_parameters(inst, rigid_at=degree if degree <= 3 else None)
    rot = rotation_factors(inst.phi, inst.xi)
    out = []
    for k in range(1, 5):
        d = disk_order(k, canon, strict=False)
        w = rot.to_canonical(k, derivs[k])
        out.append(d.slack(w) / _radius_scale(k, canon.r, canon.s))
    return out


def membership_violations(z0: complex, derivs: list, degree: int) -> list:
    """Orders k whose data violate |f^(k) - c_k| <= rho_k (1 + rtol) + rtol * rho_k_max."""
    inst = GeneralInstance(z0, *derivs[:4])
    canon = invert_parameters(inst, rigid_at=degree if degree <= 3 else None)
    rot = rotation_factors(inst.phi, inst.xi)
    bad = []
    for k in range(1, 5):
        d = disk_order(k, canon, strict=False)
        floor = MEMBERSHIP_RTOL * _radius_scale(k, canon.r, canon.s)
        if not d.contains(rot.to_canonical(k, derivs[k]), rtol=MEMBERSHIP_RTOL, atol=floor):
            bad.append(k)
    return bad


def suite_membership(cfg: VerifyConfig) -> SuiteResult:
    res = SuiteResult("membership", cfg.trials, 0, math.inf, MEMBERSHIP_RTOL, "min normalized slack")
    for i in range(cfg.trials):
        rng = _rng(cfg.seed, "membership", i)
        degree = int(rng.integers(1, cfg.max_degree + 1))
        z0, derivs = draw_selfmap_data(rng, degree, cfg.z0, cfg.w0)
        try:
            slack = min(membership_slacks(z0, derivs, degree))
            bad = membership_violations(z0, derivs, degree)
            note = f"violated at orders {bad}" if bad else None
        except SchwarzRegionsError as exc:
            slack = -math.inf
            note = f"{type(exc).__name__}: {exc}"
        res.worst = min(res.worst, slack)
        if note is not None:
            res.failures += 1
            if res.first_failure is None:
                res.first_failure = _sample_echo(cfg.seed, "membership", i, degree, z0, derivs, note)
    return res


def suite_strictness(cfg: VerifyConfig, degree: int = 5) -> SuiteResult:
    """Fourth-order slack of degree-5 samples must be strictly positive."""
    n = min(cfg.trials, cfg.peschl_cap)
    res = SuiteResult("strictness", n, 0, math.inf, 0.0, "min normalized slack (order 4)")
    for i in range(n):
        rng = _rng(cfg.seed, "strictness", i)
        z0, derivs = draw_selfmap_data(rng, degree, cfg.z0, cfg.w0)
        try:
            slack = membership_slacks(z0, derivs, degree)[3]
        except SchwarzRegionsError:
            slack = -math.inf
        res.worst = min(res.worst, slack)
        if not slack > 0:
            res.failures += 1
            if res.first_failure is None:
                res.first_failure = _sample_echo(cfg.seed, "strictness", i, degree, z0, derivs)
    return res


def _random_canonical(rng: np.random.Generator) -> tuple:
    r = rng.uniform(0.05, MAX_SAMPLE_MODULUS)
    s = rng.uniform(0.0, r)
    return r, s, [_disk_point(rng) for _ in range(3)]


def attainment_error(k: int, r: float, s: float, params: list, theta: float) -> float:
    """Relative gap between f^(k)(r) of the boundary extremal and c_k + rho_k e^{i theta}.

    The order-k parameter is set to e^{i theta}; for k = 4 that is alpha.
    """
    e = cmath.exp(1j * theta)
    inner = list(params[: k - 1])
    disk = disk_order(k, CanonicalInstance(r, s, *inner))
    pred = disk.point(e)
    if k == 4:
        spec = build_extremal(CanonicalInstance(r, s, *inner), e)
    else:
        spec = build_extremal(CanonicalInstance(r, s, *(inner + [e])))
    got = evaluate_extremal(spec)[k]
    return abs(got - pred) / max(1.0, disk.radius)


def _attainment(cfg: VerifyConfig, name: str, orders: tuple) -> SuiteResult:
    n = min(cfg.trials, cfg.attainment_cap)
    m = cfg.thetas_per_instance
    res = SuiteResult(name, n * m * len(orders), 0, 0.0, ATTAIN_RTOL, "max relative error")
    for i in range(n):
        rng = _rng(cfg.seed, name, i)
        r, s, params = _random_canonical(rng)
        thetas = rng.uniform(-math.pi, math.pi, m)
        for k in orders:
            for th in thetas:
                err = attainment_error(k, r, s, params, float(th))
                res.worst = max(res.worst, err)
                if not err <= ATTAIN_RTOL:
                    res.failures += 1
                    if res.first_failure is None:
                        res.first_failure = {
                            "seed": cfg.seed, "suite": name, "index": i, "order": k,
                            "r": r, "s": s, "params": [_cx(p) for p in params],
                            "theta": float(th), "error": err,
                        }
    return res


def suite_attainment(cfg: VerifyConfig) -> SuiteResult:
    return _attainment(cfg, "attainment", (4,))


def suite_lower_order(cfg: VerifyConfig) -> SuiteResult:
    """Attainment for orders 1-3; membership for them is part of suite_membership."""
    return _attainment(cfg, "lower_order", (1, 2, 3))


def _peschl(cfg: VerifyConfig, name: str, degrees: Callable, want_equality: bool) -> SuiteResult:
    n = min(cfg.trials, cfg.peschl_cap)
    label = "max relative |lhs - rhs|" if want_equality else "min (rhs - lhs) / rhs"
    res = SuiteResult(name, n, 0, 0.0 if want_equality else math.inf, PESCHL_RTOL if want_equality else 0.0, label)
    for i in range(n):
        rng = _rng(cfg.seed, name, i)
        degree = degrees(rng)
        B = random_blaschke(rng, degree)
        z = _disk_point(rng)
        lhs, rhs = cho_inequality(peschl_derivatives(blaschke_jet(B, z, 4)))
        if want_equality:
            val = abs(lhs - rhs) / max(1.0, abs(rhs))
            res.worst = max(res.worst, val)
            ok = val <= PESCHL_RTOL
        else:
            val = (rhs - lhs) / rhs if rhs > 0 else -math.inf
            res.worst = min(res.worst, val)
            ok = val > 0
        if not ok:
            res.failures += 1
            if res.first_failure is None:
                res.first_failure = {
                    "seed": cfg.seed, "suite": name, "index": i, "degree": degree,
                    "rotation": B.rotation, "zeros": [_cx(zj) for zj in B.zeros],
                    "z": _cx(z), "lhs": lhs, "rhs": rhs,
                }
    return res


def suite_peschl_equality(cfg: VerifyConfig) -> SuiteResult:
    return _peschl(cfg, "peschl_equality", lambda rng: int(rng.integers(1, 5)), True)


def suite_peschl_strict(cfg: VerifyConfig) -> SuiteResult:
    return _peschl(cfg, "peschl_strict", lambda rng: 5, False)


def rotation_error(z0: complex, w0: complex, betas: list) -> float:
    """Worst relative mismatch between the general-frame disks and the rotated canonical ones."""
    inst = GeneralInstance(z0, w0)
    canon = CanonicalInstance(inst.r, inst.s, *to_canonical_parameters(z0, w0, *betas))
    rot = rotation_factors(inst.phi, inst.xi)
    worst = 0.0
    for k in range(1, 5):
        g = disk_order_general(k, inst, *betas[: k - 1])
        c = disk_order(k, canon)
        scale = max(1.0, abs(c.center), c.radius)
        worst = max(
            worst,
            abs(rot.to_canonical(k, g.center) - c.center) / scale,
            abs(g.radius - c.radius) / scale,
        )
    return worst


def suite_rotation(cfg: VerifyConfig) -> SuiteResult:
    n = min(cfg.trials, cfg.attainment_cap)
    res = SuiteResult("rotation", n, 0, 0.0, ROTATION_RTOL, "max relative error")
    for i in range(n):
        rng = _rng(cfg.seed, "rotation", i)
        z0 = _random_z0(rng)
        w0 = abs(z0) * _disk_point(rng, 1.0)
        betas = [_disk_point(rng) for _ in range(3)]
        err = rotation_error(z0, w0, betas)
        res.worst = max(res.worst, err)
        if not err <= ROTATION_RTOL:
            res.failures += 1
            if res.first_failure is None:
                res.first_failure = {"seed": cfg.seed, "suite": "rotation", "index": i,
                                     "z0": _cx(z0), "w0": _cx(w0), "betas": [_cx(b) for b in betas]}
    return res


def root_residual(eta: complex, theta: float) -> float:
    x = solve_t_theta(eta, theta)
    return abs(2 * (x * x - abs(eta) ** 2) - abs(x * cmath.exp(1j * theta) - eta.conjugate()))


def suite_root_solver(cfg: VerifyConfig) -> SuiteResult:
    n = min(cfg.trials, cfg.peschl_cap)
    res = SuiteResult("root_solver", n, 0, 0.0, ROOT_TOL, "max residual")
    for i in range(n):
        rng = _rng(cfg.seed, "root_solver", i)
        eta = _disk_point(rng, 1.0)
        theta = float(rng.uniform(-math.pi, math.pi))
        try:
            val = root_residual(eta, theta)
        except SchwarzRegionsError:
            val = math.inf
        res.worst = max(res.worst, val)
        if not val <= ROOT_TOL:
            res.failures += 1
            if res.first_failure is None:
                res.first_failure = {"seed": cfg.seed, "suite": "root_solver", "index": i,
                                     "eta": _cx(eta), "theta": theta}
    return res


@dataclass
class FrameCheck:
    hausdorff_ratio: float
    convexity_defect: float
    attainment_error: float
    tags: dict = field(default_factory=dict)


def check_frame(r: float, s: float, lam: complex, mu: complex, n: int = 256,
                resolution: int = 64, n_alpha: int = 128) -> FrameCheck:
    """Traced boundary against the brute-force hull, plus attainment of every traced point."""
    frame = envelope_frame(r, s, lam, mu)
    b = trace_boundary(frame, n)
    bf = brute_force_region(r, s, lam, mu, resolution, n_alpha)
    ratio = hausdorff_convex(b.gammas, bf.hull) / bf.diameter
    worst = 0.0
    for p in b.points:
        f4 = evaluate_extremal(boundary_extremal(frame, p))[4]
        worst = max(worst, abs(f4 - p.gamma) / max(1.0, abs(p.gamma)))
    tags = {t.value: sum(p.tag is t for p in b.points) for t in BoundaryTag}
    return FrameCheck(ratio, convexity_defect(b), worst, tags)


def random_frame(rng: np.random.Generator) -> tuple:
    r = rng.uniform(0.1, MAX_SAMPLE_MODULUS)
    s = rng.uniform(0.0, r)
    return r, s, _disk_point(rng), _disk_point(rng)


def suite_boundary(cfg: VerifyConfig, n: int = 256, oracle: bool = True) -> SuiteResult:
    """Boundary tracing on random frames.

    With oracle=False only convexity and attainment are checked, which is
    what the `verify` command runs; the brute-force comparison is the slow part.
    """
    frames = min(cfg.trials, cfg.boundary_cap)
    res = SuiteResult("boundary", frames, 0, 0.0, HAUSDORFF_RTOL if oracle else TRACE_ATTAIN_RTOL,
                      "max Hausdorff / diameter" if oracle else "max attainment error")
    for i in range(frames):
        rng = _rng(cfg.seed, "boundary", i)
        r, s, lam, mu = random_frame(rng)
        if oracle:
            chk = check_frame(r, s, lam, mu, n)
            val = chk.hausdorff_ratio
            ok = (chk.hausdorff_ratio <= HAUSDORFF_RTOL and chk.convexity_defect <= 1e-9
                  and chk.attainment_error <= TRACE_ATTAIN_RTOL)
        else:
            frame = envelope_frame(r, s, lam, mu)
            b = trace_boundary(frame, n)
            val = max(
                abs(evaluate_extremal(boundary_extremal(frame, p))[4] - p.gamma) / max(1.0, abs(p.gamma))
                for p in b.points
            )
            ok = val <= TRACE_ATTAIN_RTOL and convexity_defect(b) <= 1e-9
        res.worst = max(res.worst, val)
        if not ok:
            res.failures += 1
            if res.first_failure is None:
                res.first_failure = {"seed": cfg.seed, "suite": "boundary", "index": i,
                                     "r": r, "s": s, "lambda": _cx(lam), "mu": _cx(mu)}
    return res


def run_verification(cfg: VerifyConfig, *, with_oracle: bool = False) -> list:
    """The suites run by the `verify` command, in report order."""
    return [
        suite_membership(cfg),
        suite_strictness(cfg),
        suite_attainment(cfg),
        suite_lower_order(cfg),
        suite_boundary(cfg, n=64, oracle=with_oracle),
        suite_peschl_equality(cfg),
        suite_peschl_strict(cfg),
        suite_rotation(cfg),
        suite_root_solver(cfg),
    ]


def _cx(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


def _sample_echo(seed, suite, i, degree, z0, derivs, note=None) -> dict:
    out = {"seed": seed, "suite": suite, "index": i, "degree": degree,
           "z0": _cx(z0), "derivatives": [_cx(d) for d in derivs]}
    if note:
        out["error"] = note
    return out
