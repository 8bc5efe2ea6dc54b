import json
import subprocess
import sys

import pytest

from annular_hh.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_json(capsys):
    code, out, _ = run(capsys, "verify", "--braid", "1 1 1", "--strands", "2", "--format", "json")
    assert code == 0
    d = json.loads(out)
    assert d["match"] is True and d["n_plus"] == 3 and d["n_minus"] == 0


def test_compute_skh_identity(capsys):
    code, out, _ = run(capsys, "compute-skh", "--braid", "", "--strands", "3", "--f-level", "1")
    assert code == 0
    d = json.loads(out)
    assert [(c["h"], c["dim"]) for c in d["skh"]] == [(0, 3)]


def test_parse_error_exit(capsys):
    code, _, err = run(capsys, "verify", "--braid", "0")
    assert code == 2 and "error" in err


def test_negative_leading_letter(capsys):
    code, out, _ = run(capsys, "verify", "--braid", "-1 2 -1", "--format", "tsv")
    assert code == 0
    assert out.splitlines()[-1].endswith("match\tTrue")


def test_mismatch_exit(capsys):
    code, _, _ = run(capsys, "verify", "--braid", "1", "--convention", "fixed:sigma,ccw_plus")
    assert code == 1


def test_resource_exit(capsys):
    code, _, err = run(capsys, "compute-hh", "--braid", "1 1 1 1", "--max-k", "3")
    assert code == 2 and "limit" in err


def test_usage_errors(capsys):
    assert run(capsys, "verify")[0] == 2
    assert run(capsys, "verify", "--braid", "1", "--convention", "sometimes")[0] == 2
    assert run(capsys, "nonsense")[0] == 2


def test_compute_hh_with_bar(capsys):
    code, out, _ = run(capsys, "compute-hh", "--braid", "1", "--depth", "3")
    d = json.loads(out)
    assert code == 0 and d["bar"]["collapsed"] and d["bar"]["row0_matches"]


def test_calibrate_commands(capsys):
    code, out, _ = run(capsys, "calibrate", "--format", "tsv")
    assert code == 0 and "mirror,ccw_plus" in out
    code, _, err = run(capsys, "calibrate", "--braid", "1", "--braid", "-1", "--strands", "2")
    assert code == 2 and "survive" in err


def test_selftest(capsys):
    code, out, _ = run(capsys, "selftest")
    assert code == 0 and out.strip().endswith("match under mirror,ccw_plus")


@pytest.mark.parametrize("argv", [["selftest"], ["verify", "--braid", "0"]])
def test_module_entry_point(argv):
    proc = subprocess.run([sys.executable, "-m", "annular_hh", *argv], capture_output=True, text=True)
    assert proc.returncode == (0 if argv == ["selftest"] else 2)
