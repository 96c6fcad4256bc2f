import io
import json
import subprocess
import sys
from contextlib import redirect_stderr, redirect_stdout

import pytest

from nilpoisson.cli import main


def run_cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(list(argv))
    return code, out.getvalue(), err.getvalue()


def test_solve_json_matches_tp1():
    code, out, _ = run_cli("solve", "--n", "5", "--delta", "1", "--identity", "transposed",
                           "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert len(payload["solution"]["free"]) == 4
    assert payload["solution"]["forced"] == []
    assert payload["match"]["family"] == "TP1"


def test_solve_delta_poisson_trivial():
    code, out, _ = run_cli("solve", "--n", "5", "--delta", "1/2", "--identity", "delta_poisson",
                           "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["solution"]["free"] == []
    assert payload["solution"]["basis"] == []


def test_canon_witness_scaling():
    code, out, _ = run_cli("canon", "--family", "TP0", "--n", "5", "--delta", "0",
                           "--alphas", "4,0,0,0,0", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["family"]["alphas"] == ["1", "0", "0", "0", "0"]
    assert payload["witness"]["steps"][0]["A"][0] == "1/2"
    assert payload["catalog_entry"] == "TP0[n=5, delta=0](1,0,0,0,0)"


def test_output_determinism():
    a = run_cli("solve", "--n", "5", "--delta", "2", "--identity", "transposed", "--format", "json")
    b = run_cli("solve", "--n", "5", "--delta", "2", "--identity", "transposed", "--format", "json")
    assert a == b
    c = run_cli("catalog", "--n", "6", "--delta", "3", "--format", "json")
    d = run_cli("catalog", "--n", "6", "--delta", "3", "--format", "json")
    assert c == d


def test_json_roundtrip_schemas():
    from nilpoisson.families import FamilySpec

    code, out, _ = run_cli("catalog", "--n", "5", "--delta", "0", "--format", "json")
    assert code == 0
    entries = json.loads(out)
    for obj in entries:
        spec = FamilySpec.from_json(obj)
        assert spec.to_json() == obj


def test_verify_family_and_transform_law():
    code, out, _ = run_cli("verify", "--family", "TP2", "--n", "5", "--delta", "2",
                           "--alphas", "sym", "--identity", "transposed", "--format", "json")
    assert code == 0
    assert json.loads(out)["all_zero"] is True
    code, out, _ = run_cli("verify", "--family", "TPdelta", "--n", "5", "--delta", "sym",
                           "--transform-law", "--format", "json")
    assert code == 0
    assert json.loads(out)["all_zero"] is True


def test_verify_detects_violation():
    # alpha_1 != 0 at delta = 2 violates the transposed identity
    code, out, _ = run_cli("verify", "--family", "Dim3", "--n", "3", "--delta", "2",
                           "--alphas", "1,0,0", "--identity", "transposed", "--format", "json")
    assert code == 0
    assert json.loads(out)["all_zero"] is False


def test_iso_exit_codes():
    code, out, _ = run_cli("iso", "--family", "TP0", "--n", "5", "--delta", "0",
                           "--alphas", "4,0,0,0,0", "--alphas2", "9,0,0,0,0", "--format", "json")
    assert code == 0
    assert json.loads(out)["verdict"] == "isomorphic"
    code, out, _ = run_cli("iso", "--family", "TPdelta", "--n", "8", "--delta", "3",
                           "--alphas", "2,1,0", "--alphas2", "16,16,0", "--format", "json")
    assert code == 2
    assert json.loads(out)["verdict"] == "inconclusive"


def test_validation_errors_exit_1():
    code, _, err = run_cli("solve", "--n", "5", "--delta", "0.5", "--identity", "transposed")
    assert code == 1 and "exact rational" in err
    code, _, err = run_cli("canon", "--family", "TP0", "--n", "5", "--delta", "0", "--alphas", "1,2")
    assert code == 1 and "takes" in err
    code, _, err = run_cli("solve", "--n", "99", "--delta", "1", "--identity", "transposed")
    assert code == 1 and "NILPOISSON_MAX_N" in err


def test_max_n_env(monkeypatch):
    monkeypatch.setenv("NILPOISSON_MAX_N", "4")
    code, _, err = run_cli("solve", "--n", "5", "--delta", "1", "--identity", "transposed")
    assert code == 1 and "NILPOISSON_MAX_N=4" in err


def test_discriminant_report():
    code, out, _ = run_cli("discriminant", "--n", "5", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["roots"] == ["0", "1", "2"]
    assert payload["special_delta"]["half_n_minus_2"] == "3/2"
    assert payload["special_delta"]["half_n_minus_1"] == "2"
    assert payload["special_delta"]["quadratic_rational_roots"] == []
    code, out, _ = run_cli("discriminant", "--n", "4", "--format", "json")
    payload = json.loads(out)
    assert payload["special_delta"]["quadratic_rational_roots"] == ["-4", "1"]


def test_canon_batch_seeded():
    a = run_cli("canon", "--family", "TP0", "--n", "5", "--delta", "0", "--batch", "5",
                "--seed", "7", "--format", "json")
    b = run_cli("canon", "--family", "TP0", "--n", "5", "--delta", "0", "--batch", "5",
                "--seed", "7", "--format", "json")
    assert a == b and a[0] == 0
    entries = json.loads(a[1])
    assert len(entries) == 5
    assert all(e["catalog_entry"] is not None for e in entries)


def test_console_script_entrypoint():
    proc = subprocess.run(
        [sys.executable, "-m", "nilpoisson.cli", "catalog", "--n", "2", "--delta", "0"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "Dim2" in proc.stdout


def test_human_format_tables():
    code, out, _ = run_cli("catalog", "--n", "3", "--delta", "2")
    assert code == 0
    assert "e_1 . e_1 = e_2" in out
    assert "[e_1, e_2]" in out
