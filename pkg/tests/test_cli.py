import csv
import json
import subprocess
import sys

import pytest

from lehmer.cli import dumps, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def envelope(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    assert out.endswith("\n") and out.count("\n") == 1
    env = json.loads(out)
    assert set(env) == {"command", "inputs", "result", "warnings"}
    return env


def test_float_formatting():
    assert dumps(1.0) == "1.0"
    assert dumps(0.1) == "0.10000000000000001"
    assert dumps(1e300) == "1.0000000000000001e+300"
    assert dumps({"a": [1, 2.5, None, True]}) == '{"a": [1, 2.5, null, true]}'
    assert dumps(float("nan")) == "null"


def test_measure(capsys):
    env = envelope(capsys, "measure", "1,1,0,-1,-1,-1,-1,-1,0,1,1")
    assert env["command"] == "measure"
    assert abs(env["result"]["value"] - 1.1762808183) < 1e-9
    assert env["result"]["roots"]["log_mahler"] == pytest.approx(0.1623576120, abs=1e-9)


def test_measure_fast_path_note(capsys):
    env = envelope(capsys, "measure", "1,1,1")
    assert env["result"]["value"] == 1.0
    assert any("fast path" in w for w in env["warnings"])


def test_measure_both_methods(capsys):
    env = envelope(capsys, "measure", "-1,-1,0,1", "--method", "both")
    r = env["result"]
    assert r["within_radii"] is True
    assert r["agreement_delta"] <= r["roots"]["error_radius"] + r["jensen"]["error_radius"]
    env = envelope(capsys, "measure", "-1,-1,0,1", "--method", "jensen", "--samples", "4096")
    assert env["result"]["jensen"]["method"] == "JensenQuadrature"


def test_measure_parse_error(capsys):
    code, out, err = run(capsys, "measure", "garbage")
    assert code == 2 and out == "" and "garbage" in err


def test_classify(capsys):
    assert envelope(capsys, "classify", "1,1,0,-1,-1,-1,-1,-1,0,1,1")["result"]["kind"] == "Salem"
    assert envelope(capsys, "classify", "1,1,1")["result"]["kind"] == "CyclotomicProduct"
    env = envelope(capsys, "classify", "-1,-1,0,1")
    assert env["result"]["kind"] == "Pisot"
    assert "irreducibility not verified" in env["warnings"]


def test_geodesic(capsys):
    env = envelope(capsys, "geodesic", "--trace-poly", "-3,1")
    assert env["result"]["length_dim2"] == pytest.approx(1.9248473, abs=1e-7)
    env = envelope(capsys, "geodesic", "--u-poly", "1,1,0,-1,-1,-1,-1,-1,0,1,1")
    assert env["result"]["length_dim3"] == pytest.approx(0.1623576, abs=1e-7)
    code, _, err = run(capsys, "geodesic", "--trace-poly", "-1,1")
    assert code == 2 and "not hyperbolic" in err
    code, _, err = run(capsys, "geodesic")
    assert code == 2


def test_bound(capsys):
    env = envelope(capsys, "bound", "dobrowolski", "--d", "10")
    assert env["result"]["value"] == pytest.approx(0.0118807, abs=1e-7)
    assert env["inputs"]["constants"]["c1"] == 0.25
    env = envelope(capsys, "bound", "dobrowolski", "--d", "2")
    assert env["result"]["vacuous"] is True
    assert any("vacuous" in w for w in env["warnings"])
    assert envelope(capsys, "bound", "theorem1b", "--systole", "0.1", "--dim-n", "4")["result"]["value"] == 100.0
    env = envelope(capsys, "bound", "systole-volume", "--vol", "1e6", "--c3", "0.5")
    assert env["result"]["form"] == "affine"
    code, _, err = run(capsys, "bound", "systole-volume", "--vol", "10")
    assert code == 2 and "threshold" in err
    code, _, _ = run(capsys, "bound", "dobrowolski")
    assert code == 2


def test_compare_growth(capsys, tmp_path):
    out = tmp_path / "g.csv"
    env = envelope(capsys, "compare-growth", "--vol-min", "1e6", "--vol-max", "1e9", "--steps", "2", "--out", str(out))
    rows = list(csv.reader(out.open()))
    assert rows[0] == ["volume", "arith_syst_lb", "nonarith_syst_ub"]
    assert float(rows[1][1]) == env["result"]["rows"][0][1]
    assert env["result"]["rows"][0][1] == pytest.approx(0.012423884284916, abs=1e-15)
    code, _, _ = run(capsys, "compare-growth", "--vol-min", "1e6", "--vol-max", "1e6", "--steps", "2")
    assert code == 2


def test_search(capsys, tmp_path):
    env = envelope(capsys, "search", "--degree", "2", "--coeff-bound", "1")
    assert env["result"]["best_measure"]["value"] == pytest.approx(1.618034, abs=1e-6)
    ck = tmp_path / "ck"
    envelope(capsys, "search", "--degree", "6", "--coeff-bound", "1", "--checkpoint", str(ck), "--stop-after", "10")
    code, _, err = run(capsys, "search", "--resume", str(ck), "--degree", "6", "--coeff-bound", "2")
    assert code == 2 and "does not match" in err
    code, _, _ = run(capsys, "search", "--resume", str(tmp_path / "nothing"))
    assert code == 2
    env = envelope(capsys, "search", "--degree", "10", "--reciprocal-only", "--target", "1.2")
    assert env["result"]["best_polynomial"] == "1,1,0,-1,-1,-1,-1,-1,0,1,1"
    assert env["warnings"] == []


def test_usage_error_exit_status():
    proc = subprocess.run([sys.executable, "-m", "lehmer", "nonsense"], capture_output=True, text=True)
    assert proc.returncode == 2 and proc.stdout == ""


def test_identical_invocations_are_bit_identical():
    args = [sys.executable, "-m", "lehmer", "measure", "1,1,0,-1,-1,-1,-1,-1,0,1,1", "--method", "both"]
    a = subprocess.run(args, capture_output=True, text=True)
    b = subprocess.run(args, capture_output=True, text=True)
    assert a.returncode == 0 and a.stdout == b.stdout
    json.loads(a.stdout)
