import json
import subprocess
import sys

import pytest

from recurmod.cli import run


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_classify_json(capsys):
    code, out, _ = call(capsys, "classify", "--q", "2", "--a", "0", "--b", "1", "--bound", "2000", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["schemaVersion"] == 1 and doc["command"] == "classify"
    assert set(doc["result"]["members"]) == {2, 3, 9, 27, 81, 243, 729, 5, 25, 125, 625}


def test_period_text(capsys):
    code, out, _ = call(capsys, "period", "--q", "3", "--a", "0", "--b", "1", "--mod", "13")
    assert code == 0
    first, residues = out.splitlines()
    assert first == "length 52"
    assert len(residues.split(",")) == 52


def test_order_text(capsys):
    code, out, _ = call(capsys, "order", "--q", "3", "--mod", "4")
    assert (code, out) == (0, "6\n")


def test_negative_q(capsys):
    code, out, _ = call(capsys, "order", "--q=-3", "--mod", "13", "--format", "json")
    assert code == 0 and json.loads(out)["result"]["agree"]


def test_complete_csv(capsys):
    code, out, _ = call(capsys, "complete", "--q", "3", "--mod", "10", "14", "52", "--format", "csv")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 4
    assert lines[1].startswith("w,10,0,")


def test_complete_upto_variant_u(capsys):
    code, out, _ = call(capsys, "complete", "--q", "3", "--variant", "u", "--upto", "10", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["result"]["variant"] == "u"
    assert [r["modulus"] for r in doc["result"]["reports"]] == list(range(2, 11))


def test_classify_explain(capsys):
    code, out, _ = call(capsys, "classify", "--q", "3", "--bound", "500", "--explain", "2197", "--format", "json")
    steps = json.loads(out)["result"]["explain"]["2197"]
    assert code == 0 and [s["modulus"] for s in steps] == [13, 169, 2197]


def test_explain_out_of_scope(capsys):
    code, _, err = call(capsys, "classify", "--q", "1", "--bound", "100", "--explain", "2430")
    assert code == 1 and "bound" in err


def test_fs(capsys):
    code, out, _ = call(capsys, "fs", "--q", "3", "--mod", "13")
    assert code == 0 and out.startswith("# m=13 q=3 totalTerms=168")
    code, out, _ = call(capsys, "fs", "--q", "1", "--three-power", "2", "--format", "json")
    assert code == 0 and json.loads(out)["result"]["holds"]


def test_hypothesis_violation_exit_2(capsys):
    code, _, err = call(capsys, "subseq", "--q", "1", "--p", "7")
    assert code == 2 and "hypothesis" in err
    assert call(capsys, "fs", "--q", "4", "--three-power", "2")[0] == 2


def test_subseq(capsys):
    code, out, _ = call(capsys, "subseq", "--q", "3", "--p", "13", "--format", "json")
    assert code == 0 and json.loads(out)["result"]["holds"]


def test_variant_u_disagreement_exit_3(capsys):
    code, out, err = call(capsys, "variant-u", "--q", "1", "--mod", "2")
    assert code == 3 and "brute force" in err
    code, out, _ = call(capsys, "variant-u", "--q", "3", "--mod", "5", "25", "--order-divisibility", "7")
    assert code == 0


@pytest.mark.parametrize("argv", [
    [], ["bogus"], ["order", "--mod", "4"], ["order", "--q", "x", "--mod", "4"],
    ["order", "--q", "0", "--mod", "4"], ["period", "--q", "1", "--a", "5", "--b", "0", "--mod", "5"],
    ["classify", "--q", "1", "--variant", "u", "--bound", "10"],
])
def test_usage_errors_exit_1(capsys, argv):
    assert call(capsys, *argv)[0] == 1


def test_json_deterministic_across_workers(capsys):
    _, one, _ = call(capsys, "classify", "--q", "3", "--bound", "600", "--format", "json")
    _, many, _ = call(capsys, "classify", "--q", "3", "--bound", "600", "--format", "json", "--workers", "3")
    assert one == many


def test_verify_quick(capsys):
    code, out, _ = call(capsys, "verify", "--quick")
    failing = [line for line in out.splitlines() if line.startswith("FAIL")]
    # only the u-variant completeness rule and its multiplicativity fail; see the README
    assert len(failing) == 2 and all("variant-u" in line and "complet" in line for line in failing)
    assert code == 3


def test_entry_point_module():
    res = subprocess.run([sys.executable, "-m", "recurmod.cli", "order", "--q", "3", "--mod", "13"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout == "52\n"
