import csv
import io
import json
import subprocess
import sys

import pytest

from tempfrac.cli import EVAL_HEADER, VERIFY_HEADER, run


def call(*argv, env=None, monkeypatch=None):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_eval_int_example():
    code, out, _ = call("eval-int", "--expr", "1", "--alpha", "1", "--beta", "1", "--a", "0", "--t", "1")
    assert code == 0
    assert out.splitlines()[0] == ",".join(EVAL_HEADER)
    (row,) = rows(out)
    assert abs(float(row["re"]) - 0.6321206) < 1e-7
    assert row["converged"] == "true" or row["converged"] == "True" or row["converged"] == "1"


def test_eval_grid():
    code, out, _ = call("eval-int", "--expr", "exp(-t)", "--alpha", "0.5", "--beta", "0.3",
                        "--b", "2", "--grid-points", "4")
    assert code == 0
    ts = [float(r["t"]) for r in rows(out)]
    assert ts == [0.5, 1.0, 1.5, 2.0]


def test_eval_der_and_rl():
    code, out, _ = call("rl-der", "--expr", "t^2", "--alpha", "0.5", "--t", "1")
    assert code == 0
    assert abs(float(rows(out)[0]["re"]) - 1.50450555613) < 1e-7


def test_verify_example():
    code, out, _ = call("verify", "--suite", "ineq1", "--seed", "7", "--n", "50")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("theorem,residual_or_slack,pass")
    assert lines[0] == ",".join(VERIFY_HEADER)
    assert lines[-1] == "PASS 50/50"


def test_verify_json():
    code, out, err = call("verify", "--suite", "taylor", "--seed", "2", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert all(r["sign_convention"] in ("PropSign", "Undetermined") for r in data)
    assert err.startswith("PASS ")


def test_taylor_command():
    code, out, _ = call("taylor", "--expr", "exp(t)", "--alpha", "0.5", "--beta", "0.5", "--t", "0.4", "--m", "2")
    assert code == 0
    assert out.strip().splitlines()[-1] == "PASS 1/1"


def test_series_and_mellin_and_table():
    assert call("series", "--expr", "t", "--alpha", "0.5", "--beta", "0.5", "--t", "1")[0] == 0
    code, out, _ = call("mellin", "--expr", "exp(-t)", "--alpha", "0.5", "--beta", "1", "--s", "1.5",
                        "--decay", "1")
    assert code == 0
    vals = [float(r["re"]) for r in rows(out)]
    assert len(vals) == 3 and max(vals) - min(vals) < 1e-5 * abs(vals[0])
    assert call("table", "--kind", "unit", "--alpha", "0.5", "--beta", "1", "--b", "1",
                "--grid-points", "3")[0] == 0


def test_gpf():
    code, out, _ = call("gpf-int", "--expr", "1", "--alpha", "0.5", "--rho", "1", "--t", "1")
    assert code == 0
    assert abs(float(rows(out)[0]["re"]) - 1.1283791670955126) < 1e-9


@pytest.mark.parametrize("argv, needle", [
    (["eval-int", "--expr", "1", "--alpha", "-0.5", "--t", "1"], "Re(alpha) > 0"),
    (["eval-int", "--expr", "t^^2", "--alpha", "0.5", "--t", "1"], "offset 2"),
    (["eval-int", "--expr", "1", "--alpha", "0.5", "--t", "1", "--rel-tol", "1e-30"], ""),
    (["gpf-int", "--expr", "1", "--alpha", "0.5", "--rho", "0", "--t", "1"], "rho"),
    (["frobnicate"], ""),
    (["eval-int", "--alpha", "0.5", "--t", "1"], "--expr"),
])
def test_exit_two(argv, needle, capsys):
    code, _, err = call(*argv)
    assert code == 2
    assert needle in err + capsys.readouterr().err


def test_eval_error_exit_three():
    code, _, err = call("eval-int", "--expr", "(t-2)^0.5", "--alpha", "0.5", "--t", "1")
    assert code == 3
    assert "EvalError" in err


def test_effort_cap(monkeypatch):
    monkeypatch.setenv("TFC_MAX_EFFORT", "50")
    code, _, err = call("eval-int", "--expr", "1", "--alpha", "0.5", "--beta", "1", "--t", "1")
    assert code == 3 and "CostExceeded" in err


def test_determinism():
    argv = ["verify", "--suite", "all", "--seed", "123", "--n", "3"]
    assert call(*argv)[1] == call(*argv)[1]


def test_entry_points():
    argv = ["verify", "--suite", "ineq3", "--seed", "9", "--n", "4"]
    a = subprocess.run(["tfc", *argv], capture_output=True)
    b = subprocess.run([sys.executable, "-m", "tempfrac", *argv], capture_output=True)
    assert a.returncode == b.returncode == 0
    assert a.stdout == b.stdout


def test_help_documents_grammar():
    out = subprocess.run(["tfc", "--help"], capture_output=True, text=True).stdout
    assert "expr    := term" in out
