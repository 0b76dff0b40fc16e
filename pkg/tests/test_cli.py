import json

import pytest

from hecke_series import cli
from hecke_series.services import verification


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_expand_json(capsys):
    code, out, _ = run(capsys, "expand", "--expr", "polylog(-2)", "--order", "4")
    assert code == 0
    assert json.loads(out)["series"]["coeffs"] == [["1", "0"], ["1/4", "0"], ["1/9", "0"]]


def test_expand_table(capsys):
    code, out, _ = run(capsys, "expand", "--expr", "geom", "--order", "3", "--format", "table")
    assert code == 0
    assert out.splitlines() == ["exponent\tcoefficient", "0\t1", "1\t1", "2\t1"]


def test_parse_error(capsys):
    code, out, err = run(capsys, "expand", "--expr", "U(2", "--order", "4")
    assert code == 2
    assert out == ""
    assert "error: Parse error at byte 3" in err


def test_deep_nesting_is_a_parse_error(capsys):
    code, out, err = run(capsys, "expand", "--expr", "(" * 5000 + "geom" + ")" * 5000)
    assert code == 2
    assert out == ""
    assert "nesting depth <= 100" in err


def test_transform_agreement(capsys):
    code, out, _ = run(
        capsys,
        "transform", "--n", "2", "--expr", "x^1*pFq([1,1,1],[2,2])",
        "--mode", "both", "--order", "40",
    )
    assert code == 0
    assert json.loads(out)["agree"] is True


def test_transform_without_closed_form(capsys):
    code, _, err = run(capsys, "transform", "--n", "2", "--expr", "geom + geom", "--mode", "closed")
    assert code == 3
    assert "closed form unavailable" in err


def test_eigen(capsys):
    code, out, _ = run(capsys, "eigen", "--n", "2", "--expr", "polylog(-2)", "--order", "128")
    document = json.loads(out)
    assert code == 0
    assert document["numeric"]["eigenvalue"] == "1/4"
    assert document["numeric"]["checked_to"] == 128
    assert document["class"]["label"] == "Polylog(2)"


def test_eigen_rejection_still_succeeds(capsys):
    code, out, _ = run(capsys, "eigen", "--n", "2", "--expr", "pFq([1/2],[ ])")
    assert code == 0
    assert json.loads(out)["numeric"]["is_eigen"] is False


def test_eigen_invalid_index(capsys):
    code, _, err = run(capsys, "eigen", "--n", "1", "--expr", "geom")
    assert code == 2
    assert err.startswith("error:")


@pytest.mark.parametrize(
    "a, b, bound, is_cm, exponent",
    [("2,2", "1", "30", True, 2), ("1,1,1", "2,2", "30", True, -2), ("1/2", "", "8", False, None)],
)
def test_classify_cm(capsys, a, b, bound, is_cm, exponent):
    code, out, _ = run(capsys, "classify-cm", "--a", a, "--b", b, "--bound", bound)
    document = json.loads(out)
    assert code == 0
    assert document["is_cm"] is is_cm
    assert document["exponent"] == exponent


def test_classify_cm_invalid_parameter(capsys):
    code, _, _ = run(capsys, "classify-cm", "--a", "1", "--b", "0", "--bound", "10")
    assert code == 2


def test_inner(capsys):
    code, out, _ = run(
        capsys, "inner", "--f", "geom", "--g", "geom", "--order", "3", "--radius", "1"
    )
    assert code == 0
    assert json.loads(out)["value"] == "3"


def test_verify_spectrum(capsys):
    code, out, _ = run(
        capsys, "verify", "--suite", "spectrum", "--trials", "1", "--seed", "7", "--workers", "1"
    )
    assert code == 0
    assert json.loads(out)["passed"] is True


def test_verify_is_deterministic(capsys):
    argv = ("verify", "--suite", "pochhammer", "--trials", "20", "--seed", "5", "--workers", "1")
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second


def test_verify_failure_exit_code(capsys, monkeypatch):
    monkeypatch.setitem(verification.SUITES, "adjoint", lambda t: t.fail("forced"))
    code, out, _ = run(capsys, "verify", "--suite", "adjoint", "--trials", "2", "--workers", "1")
    assert code == 1
    assert len(json.loads(out)["failures"]) == 2


def test_usage_error():
    with pytest.raises(SystemExit) as info:
        cli.main(["transform", "--expr", "geom"])
    assert info.value.code == 2
