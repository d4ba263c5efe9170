import json
import os

import pytest

from dcfl_lab.cli import main

MACHINES = os.path.join(os.path.dirname(__file__), "..", "machines")
ANBN = os.path.join(MACHINES, "anbn.json")
ANBN_LDA = os.path.join(MACHINES, "anbn-2lda.json")


def report(capsys, argv):
    code = main(["--json"] + argv)
    return code, json.loads(capsys.readouterr().out)


def test_run_exit_codes(capsys):
    assert report(capsys, ["run", ANBN, "aabb"])[0] == 0
    code, rep = report(capsys, ["run", ANBN, "aab"])
    assert code == 1 and rep["verdict"] == "reject"


def test_malformed_file(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, rep = report(capsys, ["run", str(bad), "ab"])
    assert code == 2 and rep["verdict"] == "error"


def test_analyze(capsys):
    code, rep = report(capsys, ["analyze", ANBN, "aabb"])
    assert code == 0
    assert rep["heights"] == [1, 1, 2, 3, 2, 1, 1]
    assert len(rep["hills"]) == 1 and len(rep["turns"]) == 1
    code, rep = report(capsys, ["analyze", ANBN, ""])
    assert rep["heights"] == [1, 1, 1]


def test_pump(capsys):
    code, rep = report(capsys, ["pump", ANBN, "ε,a,ab,b,ε", "--imax", "5"])
    assert code == 0 and rep["verdict"] == "passes"
    code, _ = report(capsys, ["pump", ANBN, "a,b", "--imax", "5"])
    assert code == 2


def test_refute(capsys):
    code, rep = report(capsys, ["refute", "L2-union-1", "--c", "4", "--imax", "3"])
    assert code == 0
    assert rep["verdict"].startswith("no witness found; search exhausted")


def test_zoo_verbs(capsys):
    code, rep = report(capsys, ["zoo", "list"])
    assert code == 0 and any(e["name"] == "L_(d)" for e in rep["entries"])
    code, rep = report(capsys, ["zoo", "validate", "L_(d)", "--param", "d=2", "--max-len", "8"])
    assert code == 0 and rep["verdict"] == "agree"
    code, rep = report(capsys, ["zoo", "witness", "L_(d)"])
    assert all(rep["members"])


def test_lda_verbs(capsys):
    code, rep = report(capsys, ["lda", "run", ANBN_LDA, "aabb"])
    assert code == 0 and rep["visit_discipline"]
    assert report(capsys, ["lda", "validate", ANBN_LDA])[0] == 0


def test_family_verbs(capsys):
    code, rep = report(capsys, ["family", "member", "--name", "pal", "--input", "0110"])
    assert code == 0
    code, rep = report(capsys, ["family", "size", "--name", "pal", "--n-max", "8"])
    assert code == 0 and len(rep["table"]) == 9


def test_budget_env(monkeypatch, capsys):
    monkeypatch.setenv("DCFL_LAB_BUDGET", "2")
    code, rep = report(capsys, ["run", ANBN, "aabb"])
    assert code == 2 and "budget" in rep["error"]


def test_text_output(capsys):
    assert main(["run", ANBN, "ab"]) == 0
    out = capsys.readouterr().out
    assert "verdict: accept" in out


def test_verdicts_are_reproducible(capsys):
    a = report(capsys, ["refute", "Pal", "--n", "4"])[1]
    b = report(capsys, ["refute", "Pal", "--n", "4"])[1]
    a.pop("wall_time"), b.pop("wall_time")
    assert a == b


def test_unknown_verb():
    with pytest.raises(SystemExit):
        main(["frobnicate"])
