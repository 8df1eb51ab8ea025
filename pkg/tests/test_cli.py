from __future__ import annotations

import json
import subprocess
import sys

import pytest

import crl.cli as cli
from crl.charring import Character


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    assert code == 0, err
    return json.loads(out)


METHODS = {"complex-prediction", "linear-algebra", "groebner", "formula"}


def claims_have_methods(results: dict) -> bool:
    for key, value in results.items():
        if isinstance(value, dict) and key not in ("euler", "d_correction", "predicted"):
            if value.get("method") not in METHODS and not all(
                    isinstance(v, dict) and v.get("method") in METHODS for v in value.values()):
                return False
    return True


@pytest.mark.parametrize("parts, degree", [("3,2", 12), ("2,1,1,1", 8), ("7", 7)])
def test_degree(capsys, parts, degree):
    env = run_json(capsys, "degree", parts)
    assert env["results"]["degree"] == {"value": degree, "method": "formula"}
    assert env["results"]["de_jonquieres"]["value"] == degree
    assert env["schema_version"] == cli.SCHEMA_VERSION
    assert env["command"] == "degree"


def test_singular(capsys):
    env = run_json(capsys, "singular", "1,2,2,2,3,3,4")
    assert len(env["results"]["case_a"]) == 6
    assert run_json(capsys, "singular", "3,3")["results"]["empty"] is True
    two_one = run_json(capsys, "singular", "2,1")["results"]
    assert [e["partition"] for e in two_one["case_a"]] == [[3]]


def test_ideal_both(capsys):
    env = run_json(capsys, "ideal", "3,2", "4", "--gens-up-to", "5")
    res = env["results"]
    assert res["prediction"]["character"]["text"] == "s12 + s8 + s4 + s0"
    assert res["kernel"]["dim_ideal"] == 28
    assert res["agreement"] is True
    assert res["generators"]["counts"] == {"1": 0, "2": 0, "3": 0, "4": 28, "5": 0}
    assert env["certified"] is True
    assert env["assumptions"] == ["H1_IX_vanishes", "H1_OX_vanishes"]
    assert claims_have_methods(res)


def test_ideal_three_three(capsys):
    res = run_json(capsys, "ideal", "3,3", "3")["results"]
    assert res["kernel"]["character"]["text"] == "s12 + s8 + s6"


def test_unknown_d_downgrades(capsys):
    code, out, err = run(capsys, "ideal", "2,2", "3", "--method", "predict", "--json")
    assert code == 0
    env = json.loads(out)
    assert "kernel" in env["results"]
    assert any("falling back" in w for w in env["warnings"])
    code, out, err = run(capsys, "ideal", "2,2", "3")
    assert "warning" in err


def test_virtual_prediction_is_reported(capsys):
    env = run_json(capsys, "ideal", "3,2", "2")
    assert env["results"]["prediction"]["character"] is None
    assert env["results"]["prediction"]["genuine"] is False
    assert env["warnings"]


def test_mismatch_exit_code(capsys, monkeypatch):
    monkeypatch.setattr(cli, "predicted_ideal_char", lambda lam, m: Character.s(0))
    code, out, err = run(capsys, "ideal", "3,2", "4")
    assert code == cli.EXIT_MISMATCH
    assert "mismatch" in err


def test_budget_exit_code(capsys, monkeypatch):
    monkeypatch.setenv("CRL_MAX_DIM", "10")
    code, out, err = run(capsys, "ideal", "3,2", "4", "--method", "kernel")
    assert code == cli.EXIT_BUDGET
    assert "CRL_MAX_DIM" in err


@pytest.mark.parametrize("argv", [
    ["degree", "3,0"], ["degree", "x"], ["covariants", "3,2", "--check", "Q"],
    ["covariants", "3,2", "--d", "6"],
])
def test_validation_exit_code(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == cli.EXIT_VALIDATION
    assert err.startswith("error:")


def test_covariants_table(capsys):
    res = run_json(capsys, "covariants", "3,2")["results"]
    assert len(res["table"]) == 4
    assert all(row["vanishes"] and row["nonzero"] for row in res["table"])
    res = run_json(capsys, "covariants", "3,3", "--d", "6")["results"]
    assert len(res["table"]) == 3 and all(r["vanishes"] for r in res["table"])


def test_covariants_calibrate_and_check(capsys):
    res = run_json(capsys, "covariants", "3,2", "--calibrate", "H^2", "i*F^2")["results"]
    assert res["calibration"]["vectors"] == [[25, -6]]
    res = run_json(capsys, "covariants", "3,2", "--check", "A", "H")["results"]
    assert [r["vanishes"] for r in res["checks"]] == [True, False]


@pytest.mark.parametrize("op, a, b, text", [
    ("cg", 2, 3, "s5 + s3 + s1"), ("sym", 2, 5, "s10 + s6 + s2"), ("wedge", 2, 3, "s4 + s0"),
])
def test_char(capsys, op, a, b, text):
    res = run_json(capsys, "char", op, str(a), str(b))["results"]
    assert res["character"]["text"] == text


def test_euler(capsys):
    res = run_json(capsys, "euler", "3,2", "4")["results"]
    assert res["euler"]["text"] == "-s18 + s12 + s8 + s4 + s0"


@pytest.mark.parametrize("argv", [
    ["ideal", "3,2,2", "5"], ["singular", "1,2,2,2,3,3,4"], ["covariants", "4,2"],
])
def test_json_is_byte_identical(capsys, argv):
    first = run(capsys, *argv, "--json")[1]
    second = run(capsys, *argv, "--json")[1]
    assert first == second
    assert "timing" not in json.loads(first)


def test_timing_is_opt_in(capsys):
    env = run_json(capsys, "degree", "3,2", "--timing")
    assert env["timing"]["seconds"] >= 0


def test_human_output(capsys):
    code, out, _ = run(capsys, "ideal", "3,2", "4")
    assert code == 0
    assert "s12 + s8 + s4 + s0" in out and "agree" in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "crl", "degree", "3,2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert "12" in proc.stdout
    proc = subprocess.run([sys.executable, "-m", "crl", "degree", "0"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 2
