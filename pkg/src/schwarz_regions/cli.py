"""Command-line entry point: disk | region | verify | eval | peschl.

Exit codes: 0 success, 1 verification failure, 2 infeasible instance, 64 usage error.
"""
from __future__ import annotations

import argparse
import cmath
import logging
import math
import os
import re
import sys

import numpy as np

from . import __version__
from .dieudonne import (
    UNIMODULAR_TOL,
    CanonicalInstance,
    GeneralInstance,
    disk_order_general,
    invert_parameters,
    to_canonical_parameters,
    to_general_parameters,
)
from .errors import DegenerateFrame, Infeasible, SchwarzRegionsError
from .extremal import build_extremal, evaluate_extremal
from .jets import BlaschkeProduct, blaschke_jet
from .peschl import (
    EQUALITY_RTOL,
    cho_inequality,
    peschl_derivatives,
    peschl_derivatives_by_renormalization,
)
from .region import (
    distance_to_convex_region,
    boundary_thetas,
    brute_force_region,
    envelope_frame,
    trace_boundary,
)
from .report import CurveRow, Report, render_svg, write_curve_csv
from .verification import VerifyConfig, run_verification

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INFEASIBLE = 2
EXIT_USAGE = 64
SEED_ENV = "SCHWARZ_REGIONS_SEED"

log = logging.getLogger("schwarz_regions")


class UsageError(Exception):
    pass


_UNSIGNED = r"(\d+\.?\d*|\.\d+)([eE][-+]?\d+)?"


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # let '-0.4,0.1' through as a value rather than an option
        self._negative_number_matcher = re.compile(rf"^-{_UNSIGNED}(,[-+]?{_UNSIGNED})?$")

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------------------
# literals


def parse_complex(text: str) -> complex:
    """'re' or 're,im'."""
    parts = text.split(",")
    if len(parts) not in (1, 2):
        raise argparse.ArgumentTypeError(f"malformed complex literal {text!r}: use re or re,im")
    try:
        vals = [float(p) for p in parts]
    except ValueError:
        raise argparse.ArgumentTypeError(f"malformed complex literal {text!r}: use re or re,im")
    if not all(math.isfinite(v) for v in vals):
        raise argparse.ArgumentTypeError(f"non-finite complex literal {text!r}")
    return complex(vals[0], vals[1] if len(vals) == 2 else 0.0)


def parse_complex_list(text: str) -> list:
    """Semicolon-separated complex literals, or comma-separated reals when no ';' occurs.

    '0,0,0' is three real entries; '0.3,0.1;0;0' is three complex entries.
    """
    if ";" in text:
        # a trailing ';' marks a single complex entry, e.g. '0.3,0.1;'
        return [parse_complex(p) for p in text.removesuffix(";").split(";")]
    return [parse_complex(p) for p in text.split(",")]


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{SEED_ENV}={raw!r} is not an integer")


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _general_instance(z0, w0, data=()) -> GeneralInstance:
    try:
        return GeneralInstance(z0, w0, *data)
    except SchwarzRegionsError as exc:
        raise UsageError(str(exc))


# ---------------------------------------------------------------------------
# commands


def cmd_disk(args) -> int:
    if args.params is not None and args.data is not None:
        raise UsageError("give at most one of --params and --data")
    k = args.order
    inputs = {"z0": args.z0, "w0": args.w0, "order": k}
    diagnostics = {"unimodular_tol": UNIMODULAR_TOL}
    outputs = {}
    if args.data is not None:
        if len(args.data) > 3:
            raise UsageError("--data takes at most w1,w2,w3")
        inputs["data"] = args.data
        inst = _general_instance(args.z0, args.w0, args.data)
        canon = invert_parameters(inst)
        betas = to_general_parameters(inst.z0, inst.w0, canon.lam, canon.mu, canon.tau)
        recovered = {n: v for n, v in zip(("lambda", "mu", "tau"), betas) if v is not None}
        outputs["recovered_parameters"] = recovered
        outputs["recovered_canonical"] = {
            n: v for n, v in zip(("lambda", "mu", "tau"), (canon.lam, canon.mu, canon.tau)) if v is not None
        }
        params = [b for b in betas if b is not None]
    else:
        inst = _general_instance(args.z0, args.w0)
        params = list(args.params or [])
        if len(params) > 3:
            raise UsageError("--params takes at most lambda,mu,tau")
        inputs["params"] = params
        canon = CanonicalInstance(inst.r, inst.s, *to_canonical_parameters(inst.z0, inst.w0, *params))
    if len(params) < k - 1:
        raise UsageError(f"order {k} needs {k - 1} parameter(s); got {len(params)}")
    feas = canon.feasibility
    if feas.value == "infeasible":
        raise Infeasible("a parameter lies outside the closed unit disk")
    d = disk_order_general(k, inst, *params[: k - 1], strict=False)
    outputs.update({"center": d.center, "radius": d.radius, "feasibility": feas.value})
    print(Report("disk", inputs, outputs, diagnostics).to_json(), end="")
    return EXIT_OK


def _traced_rows(frame, n):
    b = trace_boundary(frame, n)
    return [CurveRow(p.theta, p.gamma, p.tag.value, p.zeta, p.t_theta) for p in b.points]


def _fallback_rows(hull: np.ndarray, n: int):
    # supporting vertex of the hull in each outward direction theta
    rows = []
    for th in boundary_thetas(n):
        e = cmath.exp(1j * th)
        v = hull[int(np.argmax((np.conj(e) * hull).real))]
        rows.append(CurveRow(float(th), complex(v), "fallback"))
    return rows


def cmd_region(args) -> int:
    lam, mu = args.lam, args.mu
    for name, v in (("lambda", lam), ("mu", mu)):
        if abs(v) > 1 + UNIMODULAR_TOL:
            raise Infeasible(f"|{name}| = {abs(v)} > 1")
        if abs(v) >= 1 - UNIMODULAR_TOL:
            raise UsageError(f"|{name}| = 1 fixes f''' and f''''; use the disk command")
    if not 0 <= args.s < args.r < 1:
        raise UsageError(f"need 0 <= s < r < 1, got r = {args.r}, s = {args.s}")
    if args.n < 16:
        raise UsageError(f"--n must be at least 16, got {args.n}")

    hull = None
    try:
        rows = _traced_rows(envelope_frame(args.r, args.s, lam, mu), args.n)
    except DegenerateFrame as exc:
        log.warning("%s; falling back to the brute-force hull", exc)
        hull = brute_force_region(args.r, args.s, lam, mu, args.oracle_resolution).hull
        rows = _fallback_rows(hull, args.n)

    extra = ()
    if args.oracle:
        if hull is None:
            hull = brute_force_region(args.r, args.s, lam, mu, args.oracle_resolution).hull
        dist = distance_to_convex_region(np.array([row.value for row in rows]), hull)
        rows = [CurveRow(r.theta, r.value, r.case, r.zeta, r.t_theta, (float(d),)) for r, d in zip(rows, dist)]
        extra = ("hull_dist",)

    text = write_curve_csv(rows, extra)
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.svg:
        svg = render_svg([r.value for r in rows], hull if args.oracle else None)
        with open(args.svg, "w", encoding="utf-8", newline="") as fh:
            fh.write(svg)
    return EXIT_OK


def cmd_verify(args) -> int:
    seed = _default_seed() if args.seed is None else args.seed
    try:
        cfg = VerifyConfig(trials=args.trials, seed=seed, max_degree=args.max_degree, z0=args.z0, w0=args.w0)
    except (ValueError, SchwarzRegionsError) as exc:
        raise UsageError(str(exc))
    suites = run_verification(cfg, with_oracle=args.oracle)
    failed = [s for s in suites if not s.passed]
    inputs = {"trials": args.trials, "seed": seed, "max_degree": args.max_degree,
              "z0": args.z0, "w0": args.w0, "oracle": args.oracle}
    outputs = {
        "all_passed": not failed,
        "suites": [s.as_dict() for s in suites],
    }
    diagnostics = {"tolerances": {s.name: s.tolerance for s in suites}, "seed": seed}
    print(Report("verify", inputs, outputs, diagnostics).to_json(), end="")
    for s in failed:
        print(f"verification failed: {s.name}: {s.failures}/{s.trials}; first offending sample "
              f"{s.first_failure}", file=sys.stderr)
    return EXIT_VERIFY_FAILED if failed else EXIT_OK


def cmd_eval(args) -> int:
    if not 4 <= args.order <= 8:
        raise UsageError(f"--order must be in 4..8, got {args.order}")
    inst = _general_instance(args.z0, args.w0)
    params = list(args.params)
    if not 1 <= len(params) <= 3:
        raise UsageError("--params takes one to three entries")
    if abs(args.alpha) > 1 + UNIMODULAR_TOL:
        raise Infeasible(f"|alpha| = {abs(args.alpha)} > 1")
    spec = build_extremal(inst, args.alpha, params=params)
    derivs = evaluate_extremal(spec, args.order)
    padded = params + [0j] * (3 - len(params))
    d = disk_order_general(4, inst, *padded, strict=False)
    # in the general frame the fourth-order disk is swept by (z0 / r) alpha
    alpha_eff = spec.alpha * inst.z0 / inst.r
    predicted = d.point(alpha_eff)
    outputs = {
        "case": spec.case,
        "derivatives": list(derivs),
        "c4": d.center,
        "rho4": d.radius,
        "predicted_f4": predicted,
        "difference": abs(derivs[4] - predicted),
    }
    inputs = {"z0": args.z0, "w0": args.w0, "params": params, "alpha": args.alpha, "order": args.order}
    print(Report("eval", inputs, outputs, {"difference_tolerance": 1e-9}).to_json(), end="")
    return EXIT_OK


def cmd_peschl(args) -> int:
    zeros = list(args.zeros or [])
    try:
        B = BlaschkeProduct(args.rotation, tuple(zeros))
        g = blaschke_jet(B, args.z, 4)
        p = peschl_derivatives(g)
    except (ValueError, SchwarzRegionsError) as exc:
        raise UsageError(str(exc))
    q = peschl_derivatives_by_renormalization(g)
    lhs, rhs = cho_inequality(p)
    outputs = {
        "D": list(p.as_tuple()),
        "D_renormalized": list(q.as_tuple()),
        "lhs": lhs,
        "rhs": rhs,
        "residual": rhs - lhs,
        "equality": abs(lhs - rhs) <= EQUALITY_RTOL * max(1.0, abs(rhs)),
    }
    inputs = {"zeros": zeros, "rotation": args.rotation, "z": args.z}
    print(Report("peschl", inputs, outputs, {"equality_rtol": EQUALITY_RTOL}).to_json(), end="")
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="schwarz-regions", description="Variability regions of higher derivatives of self-maps of the unit disk.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("disk", help="variability disk of f^(k)(z0)")
    d.add_argument("--z0", type=parse_complex, required=True)
    d.add_argument("--w0", type=parse_complex, required=True)
    g = d.add_mutually_exclusive_group()
    g.add_argument("--params", type=parse_complex_list, help="lambda,mu,tau (use ';' between complex entries)")
    g.add_argument("--data", type=parse_complex_list, help="w1,w2,w3 (use ';' between complex entries)")
    d.add_argument("--order", type=int, choices=(1, 2, 3, 4), default=4)
    d.set_defaults(func=cmd_disk)

    r = sub.add_parser("region", help="boundary of the f''''(r) region with f''' free")
    r.add_argument("--r", type=float, required=True)
    r.add_argument("--s", type=float, required=True)
    r.add_argument("--lambda", dest="lam", type=parse_complex, required=True)
    r.add_argument("--mu", type=parse_complex, required=True)
    r.add_argument("--n", type=int, default=256)
    r.add_argument("--csv", help="write the CSV here instead of standard output")
    r.add_argument("--svg")
    r.add_argument("--oracle", action="store_true", help="add the distance to the brute-force hull")
    r.add_argument("--oracle-resolution", type=_positive_int, default=64)
    r.set_defaults(func=cmd_region)

    v = sub.add_parser("verify", help="Monte Carlo property suites")
    v.add_argument("--trials", type=_positive_int, required=True)
    v.add_argument("--seed", type=int, default=None, help=f"default: ${SEED_ENV} or 0")
    v.add_argument("--z0", type=parse_complex)
    v.add_argument("--w0", type=parse_complex)
    v.add_argument("--max-degree", type=_positive_int, default=6)
    v.add_argument("--oracle", action="store_true", help="also compare traced boundaries with the brute-force hull")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("eval", help="derivatives of the extremal map at z0")
    e.add_argument("--z0", type=parse_complex, required=True)
    e.add_argument("--w0", type=parse_complex, required=True)
    e.add_argument("--params", type=parse_complex_list, required=True)
    e.add_argument("--alpha", type=parse_complex, default=0j)
    e.add_argument("--order", type=int, default=4)
    e.set_defaults(func=cmd_eval)

    q = sub.add_parser("peschl", help="D1..D4 of a Blaschke product and the fourth-order inequality")
    q.add_argument("--zero", dest="zeros", type=parse_complex, action="append", help="a zero; repeat per factor")
    q.add_argument("--rotation", type=float, default=0.0)
    q.add_argument("--z", type=parse_complex, required=True)
    q.set_defaults(func=cmd_peschl)
    return p


def main(argv=None) -> int:
    logging.basicConfig(format="%(levelname)s: %(message)s", stream=sys.stderr)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Infeasible as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE


if __name__ == "__main__":
    sys.exit(main())
