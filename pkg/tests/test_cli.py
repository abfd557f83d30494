import io
import json
import os
import subprocess
import sys

import pytest

from cli_cases import CASES, GOLDEN, RELATION, run
from lexalg.cli import main

REGEN = os.environ.get("LEXALG_REGEN_GOLDEN") == "1"


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(name, tmp_path):
    code, first = run(CASES[name], tmp_path)
    assert code == 0, first
    code, second = run(CASES[name], tmp_path)
    assert first == second
    path = GOLDEN / f"{name}.json"
    if REGEN:
        path.write_text(first, encoding="utf-8")
    assert path.read_text(encoding="utf-8") == first


@pytest.mark.parametrize("name", sorted(CASES))
def test_report_envelope(name, tmp_path):
    report = json.loads(run(CASES[name], tmp_path)[1])
    assert list(report) == ["command", "input", "result", "tool_version"]
    assert report["command"] == CASES[name][0]


def test_pretty_keeps_key_order(tmp_path):
    argv = ["classify", "--order", "q[2]", "--other", "q[3]"]
    _, plain = run(argv, tmp_path)
    _, pretty = run(argv + ["--pretty"], tmp_path)
    assert json.loads(plain) == json.loads(pretty)
    assert list(json.loads(pretty)["result"]) == list(json.loads(plain)["result"])
    assert "\n  " in pretty and json.loads(plain)["result"]["isomorphic"] is False


def _error(argv, tmp_path):
    code, out = run(argv, tmp_path)
    return code, json.loads(out)["error"]


def test_budget_error(tmp_path):
    code, err = _error(["stage", "--order", "w[7]", "--depth", "5"], tmp_path)
    assert code == 2 and err["type"] == "BudgetExceededError"
    code, _ = run(["stage", "--order", "w[7]", "--depth", "5", "--budget", "20000"], tmp_path)
    assert code == 0


def test_parse_error(tmp_path):
    code, err = _error(["decompose", "--order", "w[2] + "], tmp_path)
    assert code == 2 and err["type"] == "OrderSyntaxError"
    code, err = _error(["semisimple", "--order", "w[1]"], tmp_path)
    assert code == 2 and err["type"] == "MultiplicityError"


def test_oracle_bad_relation(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"n": 3, "edges": [[1, 1], [2, 2], [3, 3], [1, 2], [2, 3]]}))
    code, err = _error(["oracle", "--relation", str(path)], tmp_path)
    assert code == 2 and err["type"] == "RelationError"
    code, err = _error(["oracle", "--relation", str(tmp_path / "missing.json")], tmp_path)
    assert code == 2


def test_oracle_from_stdin(monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO(json.dumps(RELATION)))
    out = io.StringIO()
    assert main(["oracle", "--relation", "-"], stdout=out) == 0
    assert json.loads(out.getvalue())["result"]["agree"] is True


def test_radical_dimensions_add_up(tmp_path):
    report = json.loads(run(["radical", "--order", "w[2] + z[2]", "--depth", "1"], tmp_path)[1])
    stage = report["result"]["stages"][0]
    assert stage["limit_radical_dimension"] == 16 and stage["quotient_dimension"] == 20


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "lexalg", "classify", "--order", "z[2,3]",
                           "--other", "z[3,2]"], capture_output=True, text=True, check=True)
    assert json.loads(proc.stdout)["result"]["isomorphic"] is True
