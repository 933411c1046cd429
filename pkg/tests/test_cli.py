import json

import pytest

from cido.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_basis_cubic(capsys):
    code, out, _ = run(capsys, "basis", "fermat-cubic")
    assert code == 0
    assert json.loads(out) == {"total_dim": 2, "per_weight": {"0": ["1"], "1": ["y1*x0*x1*x2"]}}


def test_smooth_cusp_fails(capsys):
    code, out, _ = run(capsys, "smooth", "cusp")
    assert code == 1
    assert json.loads(out)["smooth"] is False
    assert json.loads(out)["witness"] == "x2"


def test_gate_refuses_singular_input(capsys):
    code, out, err = run(capsys, "basis", "cusp")
    assert code == 2 and out == ""
    assert json.loads(err)["error"] == "not_smooth"


def test_gate_override(capsys, tmp_path):
    # the conic is smooth anyway; the override just skips the certificate
    code, out, _ = run(capsys, "basis", "conic", "--allow-unchecked-smoothness")
    assert code == 0 and json.loads(out)["total_dim"] == 0
    p = tmp_path / "p.json"
    p.write_text(json.dumps({"n": 2, "polynomials": ["x0^2 + x1^2 + x2^2"],
                             "options": {"allow_unchecked_smoothness": True}}))
    assert run(capsys, "basis", str(p))[0] == 0


def test_reduce(capsys):
    code, out, _ = run(capsys, "reduce", "fermat-cubic", "--poly", "y1*x0^3")
    assert code == 0
    assert json.loads(out)["coordinates"] == {"1": "-1/3"}


def test_reduce_wrong_charge(capsys):
    code, _, err = run(capsys, "reduce", "fermat-cubic", "--poly", "x0")
    assert code == 2 and json.loads(err)["error"] == "bad_polynomial"


def test_parse_error_exit_2(capsys):
    code, _, err = run(capsys, "reduce", "fermat-cubic", "--poly", "x0 + z")
    assert code == 2
    assert json.loads(err)["error"] == "parse_error"


def test_bad_problem_files(capsys, tmp_path):
    assert run(capsys, "basis", str(tmp_path / "missing.json"))[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "basis", str(bad))[0] == 2
    inhomog = tmp_path / "inhomog.json"
    inhomog.write_text(json.dumps({"n": 2, "polynomials": ["x0^3 + x1"]}))
    code, _, err = run(capsys, "basis", str(inhomog))
    assert code == 2 and json.loads(err)["error"] == "bad_problem"
    toomany = tmp_path / "k.json"
    toomany.write_text(json.dumps({"n": 1, "polynomials": ["x0", "x1"]}))
    assert run(capsys, "smooth", str(toomany))[0] == 2


def test_unknown_command_exit_2(capsys):
    assert run(capsys, "frobnicate")[0] == 2


def test_basis_roundtrip_through_reps(capsys, tmp_path):
    out_file = tmp_path / "basis.json"
    code, out, _ = run(capsys, "basis", "ci22", "--out", str(out_file))
    assert code == 0
    stored = json.loads(out_file.read_text())
    code, out, _ = run(capsys, "reps", "ci22", "--form", "omega", "--basis", str(out_file))
    assert code == 0
    reps = json.loads(out)["representatives"]
    listed = [m for w in sorted(stored["basis"]["per_weight"], key=int) for m in stored["basis"]["per_weight"][w]]
    assert [r["monomial"] for r in reps] == listed
    assert reps[0]["form"]["degree"] == 3


@pytest.mark.parametrize("form", ["alpha", "beta", "omega"])
def test_reps_forms(capsys, form):
    code, out, _ = run(capsys, "reps", "fermat-cubic", "--form", form)
    assert code == 0
    assert len(json.loads(out)["representatives"]) == 2


def test_verify_comparison_cubic(capsys):
    code, out, _ = run(capsys, "verify", "fermat-cubic", "--check", "comparison")
    data = json.loads(out)
    assert code == 0 and data["passed"]
    assert data["reports"][0]["factor"] == "-1"
    assert data["reports"][0]["timing_ms"] is None


def test_verify_comparison_ci22_reports_failure(capsys):
    code, out, _ = run(capsys, "verify", "ci22", "--check", "comparison")
    data = json.loads(out)
    assert code == 1
    assert data["reports"][0]["factor"] == "-1"
    assert all(r["check_b"] and r["check_c"] for r in data["reports"])


@pytest.mark.parametrize("check", ["homotopy", "phi", "kernel"])
def test_verify_other_checks(capsys, check):
    code, out, _ = run(capsys, "verify", "ci22", "--check", check, "--cases", "10")
    assert code == 0 and json.loads(out)["passed"]


def test_hodge(capsys):
    code, out, _ = run(capsys, "hodge", "fermat-quintic", "--experimental-hodge-slices")
    assert code == 0
    data = json.loads(out)
    assert data["primitive_middle"] == 204 and data["euler"] == -200
    assert data["experimental_hodge_slices"] == [1, 101, 101, 1]


def test_reports_are_deterministic(capsys):
    first = run(capsys, "verify", "ci22", "--check", "homotopy", "--seed", "3", "--cases", "5")[1]
    second = run(capsys, "verify", "ci22", "--check", "homotopy", "--seed", "3", "--cases", "5")[1]
    assert first == second
    a = run(capsys, "reps", "ci22")[1]
    b = run(capsys, "reps", "ci22")[1]
    assert a == b
