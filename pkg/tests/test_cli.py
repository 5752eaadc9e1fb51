"""Command line behaviour: outputs, exit codes and determinism."""

import json
import subprocess
import sys

import pytest

from arcalg.cli import run


def _run(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip().startswith("{") else out), err


def test_dim(capsys):
    code, doc, _ = _run(capsys, "dim", "--n", "1", "--m", "2")
    assert code == 0
    assert doc["total"] == 5 and doc["graded"] == {"0": 2, "1": 2, "2": 1}
    assert doc["schema_version"] == 1 and doc["command"] == "dim"


def test_dim_h(capsys):
    code, doc, _ = _run(capsys, "dim", "--kind", "H", "--n", "2")
    assert code == 0 and doc["total"] == 12


def test_hh(capsys):
    code, doc, _ = _run(capsys, "hh", "--n", "1", "--m", "2", "--max-degree", "3")
    assert code == 0
    assert doc["ranks"] == [2, 0, 0] and doc["certified_max_degree"] == 2 and doc["first_degree"] == 0


def test_hh_braid_coefficients(capsys):
    code, doc, _ = _run(capsys, "hh", "--n", "1", "--m", "2", "--coeff", "braid:1", "--max-degree", "4")
    assert code == 0 and sum(doc["ranks"]) == 2


def test_mult(capsys):
    code, doc, _ = _run(capsys, "mult", "--n", "1", "--m", "2",
                        "--x", '[[1, "v^:^v:v^"]]', "--y", '[[1, "v^:v^:v^"]]')
    assert code == 0 and doc["product"] == [["1", "v^:^v:v^"]]


def test_modules(capsys):
    code, doc, _ = _run(capsys, "modules", "--n", "1", "--m", "2")
    assert code == 0 and doc["DtD_equals_cartan"]


def test_braid_commands(capsys):
    code, doc, _ = _run(capsys, "kh", "--braid", "1 1 1")
    assert code == 0 and doc["total"] == 4
    code, doc, _ = _run(capsys, "jones", "--braid", "1 1 1")
    assert code == 0 and doc["jones"] == {"1": 1, "3": 1, "5": 1, "9": -1}
    code, doc, _ = _run(capsys, "akh", "--braid", "1 1 1")
    assert code == 0 and doc["total"] == 6 and doc["complete"]
    code, doc, _ = _run(capsys, "ss-check", "--braid", "1 2")
    assert code == 0 and doc["passed"]


def test_text_format(capsys):
    code, out, _ = _run(capsys, "dim", "--n", "1", "--m", "2", "--format", "text")
    assert code == 0 and "total: 5" in out


@pytest.mark.parametrize("argv", [
    [],
    ["frobnicate"],
    ["dim", "--n", "1", "--m", "2", "--bogus"],
    ["dim", "--n", "1", "--m", "9"],
    ["dim", "--n", "3", "--m", "2"],
    ["dim", "--n", "1", "--m", "2", "--field", "4"],
    ["kh", "--braid", "1 2 3"],
    ["kh", "--braid", "1 1 1 1 1 1"],
    ["kh", "--braid", "x"],
    ["mult", "--n", "1", "--m", "2", "--x", "nope", "--y", "[]"],
    ["hh", "--n", "1", "--m", "2", "--coeff", "weird"],
])
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = _run(capsys, *argv)
    assert code == 2 and "error" in err


def test_uncertifiable_request_exits_1(capsys):
    code, _, err = _run(capsys, "hh", "--n", "1", "--m", "2", "--max-degree", "0")
    assert code == 1 and "not certified" in err


def test_verify_small_algebra_suite_passes(capsys):
    code, doc, err = _run(capsys, "verify", "--suite", "algebra", "--n-max", "1", "--m-max", "3")
    assert code == 0 and doc["passed"]
    assert err.count("PASS") == 4


def test_verify_reports_cancelling_product(capsys):
    # K(2,4) has a product of the cancelling shape with an extra term; the suite says so
    code, doc, err = _run(capsys, "verify", "--suite", "algebra", "--n-max", "2", "--m-max", "4")
    assert code == 1
    failed = [r for r in doc["results"] if not r["passed"]]
    assert [r["key"] for r in failed] == ["2"]
    assert all("cancelling product" in f for f in failed[0]["failures"])


def test_output_is_byte_identical():
    argv = [sys.executable, "-m", "arcalg.cli", "verify", "--suite", "algebra", "--n-max", "1", "--m-max", "3",
            "--seed", "5"]
    a = subprocess.run(argv, capture_output=True, text=True, check=True).stdout
    b = subprocess.run(argv, capture_output=True, text=True, check=True).stdout
    assert a == b and json.loads(a)["seed"] == 5
