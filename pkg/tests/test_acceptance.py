"""Acceptance criteria, one test each; every test prints a single PASS/FAIL line.

Run directly (python3 tests/test_acceptance.py) or through pytest.
"""
import os
import subprocess
import sys
import time

import pytest

from schwarz_regions.region import solve_t_theta
from schwarz_regions.verification import (
    VerifyConfig,
    _rng,
    draw_selfmap_data,
    membership_violations,
    suite_attainment,
    suite_boundary,
    suite_lower_order,
    suite_membership,
    suite_peschl_equality,
    suite_peschl_strict,
    suite_root_solver,
    suite_rotation,
    suite_strictness,
)

SEED = 2024
_capsys = None


def _line(n, title, ok, detail):
    text = f"{'PASS' if ok else 'FAIL'} criterion {n} ({title}): {detail}"
    if _capsys is not None:
        with _capsys.disabled():
            print("\n" + text)
    else:
        print(text)
    return ok


@pytest.fixture(autouse=True)
def _show(capsys):
    global _capsys
    _capsys = capsys
    yield
    _capsys = None


def test_extremal_attainment():
    cfg = VerifyConfig(trials=100, seed=SEED, attainment_cap=100, thetas_per_instance=16)
    t0 = time.perf_counter()
    res = suite_attainment(cfg)
    dt = time.perf_counter() - t0
    ok = res.passed and res.trials == 1600 and dt < 10
    assert _line(1, "extremal attainment", ok,
                 f"{res.trials} checks, {res.failures} failures, worst rel err {res.worst:.2e} "
                 f"(tol 1e-9), {dt:.2f}s (limit 10s)")


def test_membership():
    cfg = VerifyConfig(trials=10_000, seed=SEED, max_degree=6)
    t0 = time.perf_counter()
    res = suite_membership(cfg)
    dt = time.perf_counter() - t0
    ok = res.passed and dt < 60
    assert _line(2, "membership", ok,
                 f"{res.trials} self-maps, {res.failures} violations, min normalized slack "
                 f"{res.worst:.2e}, {dt:.2f}s (limit 60s)")


def test_strictness():
    res = suite_strictness(VerifyConfig(trials=1000, seed=SEED, peschl_cap=1000))
    ok = res.passed and res.trials == 1000
    assert _line(3, "strictness", ok,
                 f"{res.trials} degree-5 samples, {res.failures} with slack <= 0, min normalized slack {res.worst:.2e}")


def test_lemma_equality_and_strictness():
    cfg = VerifyConfig(trials=1000, seed=SEED, peschl_cap=1000)
    eq = suite_peschl_equality(cfg)
    st = suite_peschl_strict(cfg)
    ok = eq.passed and st.passed and eq.trials == st.trials == 1000
    assert _line(4, "fourth-order inequality", ok,
                 f"degree<=4: {eq.failures}/{eq.trials} off equality (worst rel {eq.worst:.2e}, tol 1e-9); "
                 f"degree 5: {st.failures}/{st.trials} not strict (min rel gap {st.worst:.2e})")


def test_lower_order_regression():
    cfg = VerifyConfig(trials=100, seed=SEED, attainment_cap=100)
    att = suite_lower_order(cfg)
    bad = 0
    n = 2000
    for i in range(n):
        rng = _rng(SEED, "lower_order", 10_000 + i)
        degree = int(rng.integers(1, 7))
        z0, derivs = draw_selfmap_data(rng, degree)
        if any(k <= 3 for k in membership_violations(z0, derivs, degree)):
            bad += 1
    ok = att.passed and bad == 0
    assert _line(5, "lower-order regression", ok,
                 f"orders 1-3 attainment {att.failures}/{att.trials} failures (worst {att.worst:.2e}); "
                 f"membership {bad}/{n} violations")


def test_boundary_curve():
    cfg = VerifyConfig(trials=20, seed=SEED, boundary_cap=20)
    t0 = time.perf_counter()
    res = suite_boundary(cfg, n=256, oracle=True)
    dt = time.perf_counter() - t0
    ok = res.passed and res.trials == 20
    assert _line(6, "boundary curve", ok,
                 f"{res.trials} frames, {res.failures} failing, worst Hausdorff/diameter {res.worst:.2e} "
                 f"(tol 1e-3; convexity <= 1e-9 and attainment <= 1e-8 checked per frame), {dt:.1f}s")


def test_root_solver():
    res = suite_root_solver(VerifyConfig(trials=1000, seed=SEED, peschl_cap=1000))
    closed = [abs(solve_t_theta(0, th) - 0.5) for th in (-3.0, -1.0, 0.0, 1.0, 3.0)]
    closed.append(abs(solve_t_theta(0.1, 0.0) - 0.4))
    ok = res.passed and res.trials == 1000 and max(closed) <= 1e-12
    assert _line(7, "root solver", ok,
                 f"{res.trials} random (eta, theta), max residual {res.worst:.2e} (tol 1e-12); "
                 f"closed forms max err {max(closed):.1e}")


def test_rotation_equivariance():
    res = suite_rotation(VerifyConfig(trials=100, seed=SEED, attainment_cap=100))
    ok = res.passed and res.trials == 100
    assert _line(8, "rotation equivariance", ok,
                 f"{res.trials} general instances, worst rel err {res.worst:.2e} (tol 1e-10)")


def _cli(*argv):
    return subprocess.run([sys.executable, "-m", "schwarz_regions.cli", *argv], capture_output=True, check=False)


def test_determinism(tmp_path):
    v = [_cli("verify", "--trials", "100", "--seed", "7") for _ in range(2)]
    region = ["region", "--r", "0.5", "--s", "0.2", "--lambda", "0.3,0.2", "--mu", "-0.4,0.1", "--n", "256", "--oracle"]
    r = [_cli(*region, "--svg", str(tmp_path / f"{i}.svg")) for i in range(2)]
    same_svg = (tmp_path / "0.svg").read_bytes() == (tmp_path / "1.svg").read_bytes()
    ok = (all(p.returncode == 0 for p in v + r) and v[0].stdout == v[1].stdout
          and r[0].stdout == r[1].stdout and same_svg)
    assert _line(9, "determinism", ok,
                 f"verify reports identical: {v[0].stdout == v[1].stdout}; region CSV identical: "
                 f"{r[0].stdout == r[1].stdout}; SVG identical: {same_svg}")


if __name__ == "__main__":
    sys.exit(pytest.main([os.path.abspath(__file__), "-q"]))
