import json
import subprocess
import sys

import pytest

from operadkit.cli import main
from operadkit.table import endomorphism_set_operad, operad_to_json


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def end_file(tmp_path):
    path = tmp_path / "end.json"
    path.write_text(json.dumps(operad_to_json(endomorphism_set_operad([0, 1], 2))))
    return path


def test_make_and_verify_round_trip(capsys, tmp_path):
    code, out, _ = run(capsys, "make-assoc", "3")
    assert code == 0
    path = tmp_path / "a.json"
    path.write_text(out)
    assert run(capsys, "verify-operad", str(path))[0] == 0


def test_corrupted_operad_exits_one(capsys, tmp_path, end_file):
    obj = json.loads(end_file.read_text())
    rows = obj["compositions"]
    row = next(r for r in rows if r[-1] != rows[0][-1])
    row[-1] = rows[0][-1]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(obj))
    code, out, _ = run(capsys, "verify-operad", str(bad))
    assert code == 1 and "FAIL" in out


def test_schema_errors_exit_two(capsys, tmp_path):
    path = tmp_path / "junk.json"
    path.write_text("{\"carrier\": 3}")
    assert run(capsys, "verify-operad", str(path))[0] == 2
    assert run(capsys, "coproduct-normalize", "a_X")[0] == 2


def test_truncation_exits_three(capsys, end_file):
    code, _, err = run(capsys, "coproduct-normalize", "--operad", str(end_file),
                       "max_P(e, max_P(0_Q, e))")
    assert code == 3 and "truncation" in err


def test_census_output(capsys):
    code, out, _ = run(capsys, "coproduct-census", "--level", "1", "--max-beta", "2")
    assert code == 0
    assert "16/14/3/5" in out and "recursion holds" in out


def test_normalize_strategies_agree(capsys):
    word = "a_P·a_P·1_Q·a_Q"
    a = run(capsys, "coproduct-normalize", word)[1]
    b = run(capsys, "coproduct-normalize", word, "--strategy", "random", "--seed", "7")[1]
    assert a == b and "a_P·a_Q" in a


def test_json_output_is_deterministic(capsys):
    argv = ["cosimplicial", "compare", "--end-set", "2", "--L", "2", "--eps", "0",
            "--mu", "max", "--N", "2", "--format", "json"]
    code, first, _ = run(capsys, *argv)
    assert code == 0
    assert run(capsys, *argv)[1] == first
    json.loads(first)


def test_cosimplicial_limit(capsys):
    code, out, _ = run(capsys, "cosimplicial", "limit", "--end-set", "2", "--L", "2",
                       "--eps", "0", "--mu", "max", "--N", "1", "--format", "json")
    assert code == 0
    assert len(json.loads(out)["limit"]) == 2


def test_other_verbs(capsys, tmp_path):
    assert run(capsys, "hochschild", "--assoc", "--L", "1", "--n-max", "1")[0] == 0
    assert run(capsys, "pi0-j", "--level", "3", "--k-max", "1")[0] == 0
    assert run(capsys, "end-operad", "--end-set", "2", "--L", "2", "--n-max", "1")[0] == 0
    assert run(capsys, "coproduct-oracle", "--end-level-one", "--max-beta", "2")[0] == 0
    target = tmp_path / "out.dot"
    assert run(capsys, "coproduct-normalize", "a_P·a_Q", "--format", "dot", "--out", str(target))[0] == 0
    assert target.read_text().startswith("digraph")


def test_selftest_subset(capsys):
    code, out, _ = run(capsys, "selftest", "--only", "2,11")
    assert code == 0
    assert out.count("[PASS]") == 2


def test_console_script_entry():
    proc = subprocess.run([sys.executable, "-m", "operadkit.cli", "make-assoc", "1"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)
