import json
import os
import subprocess

import pytest

CLI = os.environ.get("FUZZYGB_CLI")
pytestmark = pytest.mark.skipif(not CLI, reason="FUZZYGB_CLI not set")


def run(*args, env=None):
    full_env = dict(os.environ)
    full_env.pop("FUZZYGB_TOL_SCALE", None)
    full_env.update(env or {})
    return subprocess.run([CLI, *args], capture_output=True, text=True, env=full_env)


def test_sphere_csv():
    res = run("sphere", "--n", "2,10,100", "--no-timing")
    assert res.returncode == 0, res.stderr
    lines = res.stdout.strip().splitlines()
    assert lines[0] == "N,hbar,chi_hat,abs_err,runtime_ms"
    assert len(lines) == 4
    n, _, chi, _, ms = lines[3].split(",")
    assert n == "100" and float(chi) == pytest.approx(200 / 9999**0.5, abs=1e-12)
    assert float(ms) == 0


def test_no_timing_is_byte_identical():
    a = run("torus", "--n", "4,8,16", "--no-timing")
    b = run("torus", "--n", "4,8,16", "--no-timing")
    assert a.returncode == 0 and a.stdout == b.stdout


def test_json_output(tmp_path):
    out = tmp_path / "s.json"
    res = run("axisym", "--f2", "1,0,0,0,-1", "--n", "8,16,32", "--format", "json", "--out", str(out))
    assert res.returncode == 0, res.stderr
    doc = json.loads(out.read_text())
    assert [row["N"] for row in doc["rows"]] == [8, 16, 32]


def test_check_axioms():
    res = run("check-axioms", "--n", "8,16", "--modes", "2")
    assert res.returncode == 0, res.stderr
    assert len(res.stdout.strip().splitlines()) == 3


@pytest.mark.parametrize("args", [
    ("sphere", "--n", "10,4"),
    ("sphere", "--n", "1"),
    ("axisym", "--f2", "1,0,1", "--n", "8"),
    ("axisym", "--f2", "1,x", "--n", "8"),
    ("sphere", "--format", "xml", "--n", "4"),
    ("torus",),
    ("sphere", "--n", "4", "--hbar", "0.1"),
])
def test_config_errors_exit_2(args):
    assert run(*args).returncode == 2


def test_bad_tol_scale_exit_2():
    assert run("sphere", "--n", "4", env={"FUZZYGB_TOL_SCALE": "-1"}).returncode == 2


def test_inadmissible_surface_exit_3():
    res = run("axisym", "--f2", "0.02,0,2,0,-2.02", "--domain", "-1,1", "--n", "4", "--hbar", "0.5")
    assert res.returncode == 3
    assert "N=4" in res.stderr
