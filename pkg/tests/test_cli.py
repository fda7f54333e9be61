import json
import subprocess
import sys

import pytest

from maxfam.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    return code, json.loads(out)


def test_classify_d7(capsys):
    code, doc = run_json(capsys, "classify", "--d", "7")
    assert code == 0
    assert set(doc) == {"command", "params", "results", "checks"}
    assert doc["results"]["classes"] == [[1, 3], [2]]
    assert doc["results"]["N_formula"] == doc["results"]["N_enumeration"] == 2
    assert all(set(c) == {"name", "pass", "detail"} for c in doc["checks"])


def test_gaps_zero_contains_d_plus_2(capsys):
    code, doc = run_json(capsys, "gaps", "--q", "13", "--i", "1", "--place", "zero")
    assert code == 0
    (row,) = doc["results"]["gap_sets"]
    assert 9 in row["gaps"] and row["size"] == 12


def test_aut_reports_stated_order_and_flags_structure(capsys):
    code, doc = run_json(capsys, "aut", "--q", "13", "--i", "2")
    assert doc["results"]["order"] == 42
    assert doc["results"]["case"] == "i^2+i+1 = 0 mod d"
    assert doc["results"]["constructed_order"] == 84
    assert code == 1  # the generated group is larger than the stated order
    code, doc = run_json(capsys, "aut", "--q", "13", "--i", "1")
    assert code == 0 and doc["results"]["order"] == 56


def test_count_and_maps(capsys):
    code, doc = run_json(capsys, "count", "--q", "13", "--i", "3", "--method", "naive")
    assert code == 0 and doc["results"]["N"] == 482
    code, doc = run_json(capsys, "maps", "--q", "13", "--i", "2", "--j", "2")
    assert code == 0
    orders = {r["kind"]: r.get("order") for r in doc["results"]["maps"]}
    assert orders["omega"] == 3 and orders["sigma0"] == 2
    code, doc = run_json(capsys, "maps", "--q", "25", "--i", "2", "--j", "5")
    assert code == 0 and [r["kind"] for r in doc["results"]["maps"]] == ["iso2"]


def test_classes_variants(capsys):
    code, doc = run_json(capsys, "classes", "--d", "91")
    assert code == 0 and doc["results"]["singletons"] == [9, 16]
    code, doc = run_json(capsys, "classes", "--d", "7", "--i", "1", "--j", "2")
    assert code == 0 and doc["results"] == {"isomorphic": False, "congruences": []}
    code, doc = run_json(capsys, "classes", "--d", "11", "--i", "2")
    assert doc["results"]["subfield_pattern"] == "AllDistinct"


def test_verify_and_sweep(capsys):
    code, doc = run_json(capsys, "verify", "--q", "13")
    assert code == 0 and all(c["pass"] for c in doc["checks"])
    code, doc = run_json(capsys, "sweep", "--max-d", "301")
    assert code == 0 and doc["results"]["odd_d_checked"] == 148


def test_json_is_byte_identical(capsys):
    first = run(capsys, "maps", "--q", "13", "--i", "1", "--j", "1", "--format", "json")
    second = run(capsys, "maps", "--q", "13", "--i", "1", "--j", "1", "--format", "json")
    assert first == second


def test_text_output(capsys):
    code, out, _ = run(capsys, "count", "--q", "9", "--i", "2")
    assert code == 0
    assert "N: 226" in out and "[PASS] maximal" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["count", "--q", "12", "--i", "1"],
        ["count", "--q", "7", "--i", "1"],
        ["count", "--q", "13", "--i", "4"],
        ["gaps", "--q", "17", "--i", "2"],
        ["classify", "--d", "8"],
        ["sweep", "--max-d", "5"],
        ["count", "--q", "29", "--i", "1", "--method", "naive"],
    ],
)
def test_invalid_input_exits_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == "" and "error" in err


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["count", "--q", "13"])
    assert exc.value.code == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "maxfam.cli", "classify", "--d", "9", "--format", "json"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["results"]["classes"] == [[1, 4]]
