"""Command-line behavior: pinned output, JSON stability, exit codes."""

import json
import subprocess
import sys

import pytest

import sclkit.rotation
from sclkit.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_scl_line(capsys):
    code, out, err = run(capsys, "scl", "2*abAB + ab - a - b")
    assert code == 0
    assert out == "scl = 1/1\n"
    assert err == ""


def test_scl_fraction(capsys):
    code, out, _ = run(capsys, "scl", "[a,b]")
    assert code == 0
    assert out == "scl = 1/2\n"


def test_rot_default_method(capsys):
    code, out, _ = run(capsys, "rot", "abAB")
    assert code == 0
    assert out == "rot = 1/1\n"


def test_rot_both_methods(capsys):
    code, out, _ = run(capsys, "rot", "3*abAB - abABabAB", "--method", "both")
    assert code == 0
    assert out == "rot = 1/1 (dynamical = turning)\n"


def test_rot_turning(capsys):
    code, out, _ = run(capsys, "rot", "abABabAB", "--method", "turning")
    assert code == 0
    assert out == "rot = 2/1\n"


def test_immersed_false_line(capsys):
    code, out, _ = run(capsys, "immersed", "a + b + BA")
    assert code == 0
    assert out == "scl = 1/2, rot/2 = 0/1, bounds_immersed = false\n"


def test_immersed_true_line(capsys):
    code, out, _ = run(capsys, "immersed", "abAB")
    assert code == 0
    assert out == "scl = 1/2, rot/2 = 1/2, bounds_immersed = true\n"


def test_stabilize_table(capsys):
    code, out, _ = run(capsys, "stabilize", "ab - a - b", "--max-R", "4")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 6
    assert lines[0] == "R = 0: scl = 1/2, rot/2 = 0/1, bounds_immersed = false"
    assert lines[1] == "R = 1: scl = 2/3, rot/2 = 1/2, bounds_immersed = false"
    assert lines[2] == "R = 2: scl = 1/1, rot/2 = 1/1, bounds_immersed = true"
    assert lines[-1] == "minimal R = 2"


def test_stabilize_none_found(capsys):
    code, out, _ = run(capsys, "stabilize", "ab - a - b", "--max-R", "1")
    assert code == 0
    assert out.splitlines()[-1] == "minimal R = none (searched 0..1)"


def test_scan_range(capsys):
    code, out, _ = run(capsys, "scan", "--w", "abAB", "--n-range", "1..3")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("n = 1: scl = 1/1")
    assert lines[-1] == "first equality at n = 1, persists through the range"


def test_scan_single_point(capsys):
    code, out, _ = run(capsys, "scan", "--w", "abABAbaB", "--n-range", "0")
    assert code == 0
    assert out.splitlines()[-1] == "no equality in range"


def test_corollary(capsys):
    code, out, _ = run(capsys, "corollary", "--w", "abAB", "--n", "1")
    assert code == 0
    assert out == "lhs = 3/2, rhs = 3/2, equal = true\n"


def test_matchbound_and_certify_roundtrip(capsys, tmp_path):
    path = tmp_path / "torus.cert"
    code, out, _ = run(capsys, "matchbound", "[a,b]", "--emit", str(path))
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "bound = 1/2 (chi = -1, degree = 1)"
    assert lines[1] == "certificate written to %s" % path

    code, out, _ = run(capsys, "certify", "--file", str(path))
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "chi = -1, boundary = abAB"
    assert lines[1] == "ratio = 1/2, scl = 1/2, extremal = true"


def test_certify_explicit_chain(capsys, tmp_path):
    path = tmp_path / "torus.cert"
    run(capsys, "matchbound", "[a,b]", "--emit", str(path))
    code, out, _ = run(capsys, "certify", "--file", str(path),
                       "--chain", "abAB")
    assert code == 0
    assert out.splitlines()[-1] == "ratio = 1/2, scl = 1/2, extremal = true"


def test_matchbound_zero_chain(capsys):
    code, out, _ = run(capsys, "matchbound", "a + A")
    assert code == 0
    assert out == "bound = 0/1 (chi = 0, degree = 1)\n"


def test_json_record_stable(capsys):
    code1, out1, _ = run(capsys, "immersed", "2*abAB + ab - a - b", "--json")
    code2, out2, _ = run(capsys, "immersed", "2*abAB + ab - a - b", "--json")
    assert code1 == code2 == 0
    doc1, doc2 = json.loads(out1), json.loads(out2)
    assert doc1["record"] == doc2["record"]
    assert json.dumps(doc1["record"], sort_keys=True) \
        == json.dumps(doc2["record"], sort_keys=True)
    assert set(doc1) == {"record", "timing"}
    assert set(doc1["timing"]) == {"seconds", "soft_budget_exceeded"}
    assert doc1["timing"]["soft_budget_exceeded"] is False
    rec = doc1["record"]
    assert rec["scl"] == "1/1"
    assert rec["rot"] == "2/1"
    assert rec["rot_half"] == "1/1"
    assert rec["bounds_immersed"] is True
    assert rec["limits"] == {"max_letters": 24, "max_pivots": 10 ** 6}


def test_json_scl(capsys):
    code, out, _ = run(capsys, "scl", "abABcabABC", "--json")
    assert code == 0
    rec = json.loads(out)["record"]
    assert rec == {"command": "scl", "input": "abABcabABC",
                   "chain": rec["chain"], "scl": "3/2",
                   "limits": {"max_letters": 24, "max_pivots": 10 ** 6}}


def test_exit_code_syntax_error(capsys):
    code, out, err = run(capsys, "scl", "ab^")
    assert code == 2
    assert out == ""
    assert err.startswith("error: ")
    assert "offset 2" in err


def test_exit_code_bad_range(capsys):
    code, _, err = run(capsys, "scan", "--w", "abAB", "--n-range", "5..1")
    assert code == 2
    assert "empty n range" in err


def test_exit_code_missing_file(capsys):
    code, _, err = run(capsys, "certify", "--file", "/nonexistent/x.cert")
    assert code == 2
    assert err.startswith("error: ")


def test_exit_code_not_boundary(capsys):
    code, _, err = run(capsys, "scl", "ab")
    assert code == 3
    assert "homologically trivial" in err


def test_exit_code_rank_mismatch(capsys):
    code, _, err = run(capsys, "immersed", "[a,c]")
    assert code == 2
    assert "rank" in err


def test_exit_code_resource_limit(capsys):
    code, _, err = run(capsys, "scl", "[ab,ba]", "--max-pivots", "2")
    assert code == 4
    assert "pivot cap" in err


def test_exit_code_invariant_violation(capsys, monkeypatch):
    # force the two rotation computations apart to exercise the guard
    monkeypatch.setattr(sclkit.rotation, "turning_number_chain",
                        lambda chain: 99)
    code, _, err = run(capsys, "rot", "abAB", "--method", "both")
    assert code == 5
    assert "disagrees" in err


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "sclkit", "scl", "[a,b]"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout == "scl = 1/2\n"
