import json

import pytest

from matchscheme.cli import run


def _run(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_table(capsys):
    code, out, _ = _run(capsys, "table", "--pattern", "n-2,2", "--range", "4..30", "--index", "1")
    assert code == 0
    assert "feasible n: 6, 9, 12, 15, 18, 21, 24, 27, 30" in out


def test_construct_check_roundtrip(tmp_path, capsys):
    path = tmp_path / "agl11.json"
    assert run(["construct", "--family", "agl11", "--output", str(path)]) == 0
    first = path.read_text()
    code, out, _ = _run(capsys, "check", "--file", str(path), "--lambda", "4,2", "--method", "both")
    assert code == 0 and "index 1" in out
    run(["construct", "--family", "agl11", "--output", str(path)])
    assert path.read_text() == first
    code, out, _ = _run(capsys, "check", "--file", str(path), "--lambda", "3,3")
    assert code == 1


def test_dual_full_set(tmp_path, capsys):
    path = tmp_path / "full_n3.json"
    run(["construct", "--family", "full", "--n", "3", "--output", str(path)])
    code, out, _ = _run(capsys, "dual", "--file", str(path))
    assert code == 0
    assert out.splitlines() == ["3: 15", "2,1: 0", "1,1,1: 0"]


def test_malformed_file(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    path.write_text("1-2 3-4\n1-3 2-q\n")
    code, _, err = _run(capsys, "check", "--file", str(path), "--lambda", "1,1")
    assert code == 2 and "line 2, column 5" in err


def test_usage_errors(capsys):
    assert _run(capsys, "nonsense")[0] == 2
    assert _run(capsys, "construct", "--family", "hyperoval")[0] == 2
    assert _run(capsys, "search", "--n", "6", "--lambda", "3,1,1,1")[0] == 2
    assert _run(capsys, "screen", "--lambda", "2,x")[0] == 2


def test_search_exit_codes(capsys):
    code, out, _ = _run(capsys, "search", "--n", "3", "--lambda", "2,1", "--force-base")
    assert code == 0 and json.loads(out)["status"] == "SAT"
    code, out, _ = _run(capsys, "search", "--n", "4", "--lambda", "2,1,1")
    assert code == 1 and json.loads(out)["status"] == "UNSAT"
    code, out, _ = _run(capsys, "search", "--n", "4", "--lambda", "2,2", "--node-limit", "3")
    assert code == 3 and json.loads(out)["status"] == "ABORTED"


def test_search_with_seed(tmp_path, capsys):
    path = tmp_path / "sub.txt"
    path.write_text("1-3 2-4\n")
    code, out, _ = _run(capsys, "search", "--n", "3", "--lambda", "2,1", "--seed", str(path), "--at", "5,6")
    assert code == 0
    assert [[1, 3], [2, 4], [5, 6]] in json.loads(out)["solution"]["matchings"]


def test_screen_and_spectrum(capsys):
    code, out, _ = _run(capsys, "screen", "--lambda", "2,2,1,1")
    assert code == 1 and "ruled out" in out
    code, out, _ = _run(capsys, "screen", "--lambda", "5,1")
    assert code == 0
    code, out, _ = _run(capsys, "spectrum", "--n", "3", "--json")
    data = json.loads(out)
    assert data["omega"][1] == ["-1/4", "1/6", "1"]
    code, out, _ = _run(capsys, "spectrum", "--n", "2", "--decimal")
    assert "-0.5" in out


def test_enumerate_and_derive(tmp_path, capsys):
    code, out, _ = _run(capsys, "enumerate", "--n", "2", "--list")
    assert code == 0 and "1-2 3-4" in out and "3 perfect matchings" in out
    path = tmp_path / "h.json"
    run(["construct", "--family", "hyperoval", "--a", "3", "--output", str(path)])
    capsys.readouterr()
    code, out, _ = _run(capsys, "derive", "--file", str(path), "--at", "9,10")
    assert code == 0 and len(json.loads(out)["matchings"]) == 7
