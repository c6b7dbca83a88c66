import json
import math
import os
import subprocess
import sys

import numpy as np
import pytest

from schwarz_regions.cli import main, parse_complex, parse_complex_list
from schwarz_regions.report import CSV_HEADER, Report, fmt, parse_svg_path, read_curve_csv, render_svg


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def cx(pair):
    return complex(pair[0], pair[1])


def test_complex_literals():
    assert parse_complex("0.5") == 0.5
    assert parse_complex("-0.5,2e-3") == complex(-0.5, 0.002)
    assert parse_complex_list("0,0,0") == [0, 0, 0]
    assert parse_complex_list("0.3,0.1;0;-1,2") == [0.3 + 0.1j, 0, -1 + 2j]
    assert parse_complex_list("0.3,0.1;") == [0.3 + 0.1j]


@pytest.mark.parametrize("bad", ["(1+2j)", "1,2,3", "x", "1,", "nan"])
def test_malformed_literal_is_usage_error(capsys, bad):
    with pytest.raises(SystemExit) as exc:
        main(["disk", "--z0", bad, "--w0", "0.2"])
    assert exc.value.code == 64
    assert "error" in capsys.readouterr().err


def test_disk_order1(capsys):
    code, out, _ = run(capsys, "disk", "--z0", "0.5", "--w0", "0.2", "--order", "1")
    doc = json.loads(out)
    assert code == 0 and doc["schema_version"] == 1 and doc["command"] == "disk"
    assert cx(doc["outputs"]["center"]) == pytest.approx(0.4)
    assert doc["outputs"]["radius"] == pytest.approx(0.56)
    assert doc["outputs"]["feasibility"] == "interior"


def test_disk_order4_zero_params(capsys):
    code, out, _ = run(capsys, "disk", "--z0", "0.5", "--w0", "0.2", "--order", "4", "--params", "0,0,0")
    doc = json.loads(out)
    assert code == 0
    assert abs(cx(doc["outputs"]["center"])) == 0
    assert doc["outputs"]["radius"] == pytest.approx(31.8578, rel=1e-5)


def test_disk_infeasible_data(capsys):
    code, out, err = run(capsys, "disk", "--z0", "0.5", "--w0", "0.2", "--order", "1", "--data", "1.0")
    assert code == 2 and out == "" and "infeasible" in err


def test_disk_recovers_parameters(capsys):
    code, out, _ = run(capsys, "disk", "--z0", "0.5", "--w0", "0.2", "--order", "2", "--data", repr(0.4 + 0.56 * 0.3))
    doc = json.loads(out)
    assert code == 0
    assert cx(doc["outputs"]["recovered_parameters"]["lambda"]) == pytest.approx(0.3)


def test_disk_needs_enough_parameters(capsys):
    code, _, err = run(capsys, "disk", "--z0", "0.5", "--w0", "0.2", "--order", "3", "--params", "0.1")
    assert code == 64 and "needs 2" in err


def test_disk_rejects_bad_instance(capsys):
    code, _, _ = run(capsys, "disk", "--z0", "0.5", "--w0", "0.6", "--order", "1")
    assert code == 64


def test_region_circle_frame(capsys):
    code, out, _ = run(capsys, "region", "--r", "0.5", "--s", "0.2", "--lambda", "0", "--mu", "0", "--n", "64")
    lines = out.split("\n")
    assert code == 0
    assert lines[0] == ",".join(CSV_HEADER)
    assert lines[-1] == "" and len(lines) == 66
    rows = read_curve_csv(out)
    assert len(rows) == 64 and {r.case for r in rows} == {"disk"}
    assert all(r.t_theta == 0.5 for r in rows)


def test_region_threshold_frame(capsys):
    code, out, _ = run(capsys, "region", "--r", "0.5", "--s", "0.2", "--lambda", "0", "--mu", "0.5", "--n", "256")
    rows = read_curve_csv(out)
    assert code == 0 and len(rows) == 256
    assert {r.case for r in rows} <= {"disk", "envelope"}
    at_zero = [r for r in rows if r.theta == 2 * math.pi * 128 / 256 - math.pi]
    assert at_zero[0].case == "disk"


def test_region_degenerate_falls_back(capsys, caplog):
    code, out, err = run(capsys, "region", "--r", "0.9", "--s", "0.85", "--lambda", "0.9",
                         "--mu", repr(1.09 / 1.62), "--n", "32", "--oracle-resolution", "16")
    rows = read_curve_csv(out)
    assert code == 0 and "falling back" in caplog.text
    assert len(rows) == 32 and {r.case for r in rows} == {"fallback"}
    assert all(math.isnan(r.t_theta) for r in rows)


def test_region_usage_errors(capsys):
    assert run(capsys, "region", "--r", "0.5", "--s", "0.6", "--lambda", "0", "--mu", "0")[0] == 64
    assert run(capsys, "region", "--r", "0.5", "--s", "0.2", "--lambda", "1.5", "--mu", "0")[0] == 2
    assert run(capsys, "region", "--r", "0.5", "--s", "0.2", "--lambda", "0", "--mu", "0", "--n", "8")[0] == 64


def test_region_svg_round_trip(capsys, tmp_path):
    svg_path = tmp_path / "region.svg"
    code, out, _ = run(capsys, "region", "--r", "0.5", "--s", "0.2", "--lambda", "0.3,0.2", "--mu", "-0.4,0.1",
                       "--n", "64", "--svg", str(svg_path), "--oracle", "--oracle-resolution", "16")
    assert code == 0
    rows = read_curve_csv(out)
    assert all(len(r.extra) == 1 and r.extra[0] >= 0 for r in rows)
    svg = svg_path.read_text()
    assert 'version="1.1"' in svg and 'class="axes"' in svg
    back = parse_svg_path(svg, "curve")
    assert np.array_equal(back, np.array([r.value for r in rows]))
    assert parse_svg_path(svg, "hull").size > 3


def test_svg_viewport_has_margin():
    pts = np.array([0, 2, 2 + 1j, 1j])
    svg = render_svg(pts)
    vb = [float(x) for x in svg.split('viewBox="')[1].split('"')[0].split()]
    # x in [0, 2], y = -im in [-1, 0]
    assert vb == pytest.approx([-0.1, -1.05, 2.2, 1.1])


def test_eval_examples(capsys):
    code, out, _ = run(capsys, "eval", "--z0", "0.5", "--w0", "0.2", "--params", "0,0,0", "--alpha", "1")
    o = json.loads(out)["outputs"]
    assert code == 0 and o["case"] == 4
    assert cx(o["derivatives"][4]) == pytest.approx(31.8578, rel=1e-5)
    assert o["difference"] <= 1e-9

    code, out, _ = run(capsys, "eval", "--z0", "0.5", "--w0", "0.2", "--params", "0.6,0.8;", "--alpha", "1")
    o = json.loads(out)["outputs"]
    assert code == 0 and o["case"] == 1 and o["rho4"] == 0 and o["difference"] <= 1e-9

    code, out, _ = run(capsys, "eval", "--z0", "0.3,0.4", "--w0", "-0.1", "--params", "0.1,0.2;-0.3;0.5",
                       "--alpha", "0")
    o = json.loads(out)["outputs"]
    assert code == 0 and abs(cx(o["derivatives"][4]) - cx(o["c4"])) <= 1e-9 * max(1, o["rho4"])


def test_eval_errors(capsys):
    assert run(capsys, "eval", "--z0", "0.5", "--w0", "0.2", "--params", "1.2,0,0")[0] == 2
    assert run(capsys, "eval", "--z0", "0.5", "--w0", "0.2", "--params", "0,0,0", "--alpha", "2")[0] == 2
    assert run(capsys, "eval", "--z0", "0.5", "--w0", "0.2", "--params", "0,0,0", "--order", "9")[0] == 64


def test_peschl_command(capsys):
    code, out, _ = run(capsys, "peschl", "--zero", "0.5,0.1", "--zero=-0.3", "--zero", "0.2", "--zero", "0,0.6",
                       "--z", "0.2,0.2")
    o = json.loads(out)["outputs"]
    assert code == 0 and o["equality"] is True
    code, out, _ = run(capsys, "peschl", "--zero", "0.5", "--zero", "0.1", "--zero", "-0.2", "--zero", "0.3",
                       "--zero", "0.4,0.4", "--z", "0.1")
    o = json.loads(out)["outputs"]
    assert code == 0 and o["equality"] is False and o["residual"] > 0
    assert run(capsys, "peschl", "--z", "0.1")[0] == 64


def test_verify_small_run(capsys):
    code, out, _ = run(capsys, "verify", "--trials", "20", "--seed", "3")
    doc = json.loads(out)
    assert code == 0 and doc["outputs"]["all_passed"]
    assert doc["diagnostics"]["seed"] == 3
    names = [s["name"] for s in doc["outputs"]["suites"]]
    assert {"membership", "attainment", "peschl_equality"} <= set(names)


def test_verify_fixed_point(capsys):
    code, out, _ = run(capsys, "verify", "--trials", "20", "--seed", "3", "--z0", "0.3,0.4", "--w0", "-0.1,0.2")
    assert code == 0 and json.loads(out)["inputs"]["w0"] == [-0.1, 0.2]


def test_verify_usage(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--trials", "0"])
    assert exc.value.code == 64
    assert run(capsys, "verify", "--trials", "5", "--w0", "0.1")[0] == 64


def test_verify_seed_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("SCHWARZ_REGIONS_SEED", "41")
    code, out, _ = run(capsys, "verify", "--trials", "5")
    assert code == 0 and json.loads(out)["inputs"]["seed"] == 41
    monkeypatch.setenv("SCHWARZ_REGIONS_SEED", "x")
    assert run(capsys, "verify", "--trials", "5")[0] == 64


def test_verify_failure_exit_code(capsys, monkeypatch):
    import schwarz_regions.cli as cli
    from schwarz_regions.verification import SuiteResult

    bad = SuiteResult("membership", 3, 1, -1.0, 1e-9, "min normalized slack", {"seed": 0, "index": 2})
    monkeypatch.setattr(cli, "run_verification", lambda cfg, with_oracle=False: [bad])
    code, out, err = run(capsys, "verify", "--trials", "3")
    assert code == 1 and "index" in err
    assert json.loads(out)["outputs"]["all_passed"] is False


def test_report_json_stable():
    r = Report("x", {"a": 1 + 2j, "b": float("inf")}, {"v": [0.1, np.float64(0.2)]})
    doc = json.loads(r.to_json())
    assert doc == {"schema_version": 1, "command": "x", "inputs": {"a": [1.0, 2.0], "b": "inf"},
                   "outputs": {"v": [0.1, 0.2]}, "diagnostics": {}}
    assert float(fmt(0.1)) == 0.1 and float(fmt(1 / 3)) == 1 / 3


def _cli(*argv, env=None):
    return subprocess.run([sys.executable, "-m", "schwarz_regions.cli", *argv], capture_output=True,
                          env={**os.environ, **(env or {})}, check=False)


def test_separate_processes_are_byte_identical(tmp_path):
    a = _cli("verify", "--trials", "30", "--seed", "7")
    b = _cli("verify", "--trials", "30", "--seed", "7")
    assert a.returncode == 0 and a.stdout == b.stdout
    args = ["region", "--r", "0.6", "--s", "0.3", "--lambda", "0.2,0.5", "--mu", "-0.3,-0.3", "--n", "128"]
    a = _cli(*args, "--svg", str(tmp_path / "a.svg"))
    b = _cli(*args, "--svg", str(tmp_path / "b.svg"))
    assert a.stdout == b.stdout
    assert (tmp_path / "a.svg").read_bytes() == (tmp_path / "b.svg").read_bytes()


def test_degenerate_warning_reaches_stderr():
    p = _cli("region", "--r", "0.9", "--s", "0.85", "--lambda", "0.9", "--mu", repr(1.09 / 1.62),
             "--n", "16", "--oracle-resolution", "16")
    assert p.returncode == 0 and b"falling back" in p.stderr
