import io
import json

import pytest

from conleytrace.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_examples_list(capsys):
    code, out, _ = run(capsys, "examples", "list")
    assert code == 0
    assert [line.split()[0] for line in out.splitlines()] == [
        "g_horseshoe", "lcy", "attractor_point", "attractor_circle", "repeller", "s2_continuum",
    ]


@pytest.mark.parametrize(
    "name, extra",
    [
        ("g_horseshoe", []),
        ("lcy", ["--r", "3", "--q", "2"]),
        ("attractor_point", ["--dim", "3", "--orientation", "-1"]),
        ("attractor_circle", ["--orientation", "-1"]),
        ("repeller", ["--dim", "1"]),
        ("s2_continuum", []),
    ],
)
def test_emit_then_analyze_round_trip(capsys, tmp_path, name, extra):
    path = tmp_path / f"{name}.json"
    code, _, _ = run(capsys, "examples", "emit", name, *extra, "-o", str(path))
    assert code == 0
    code, out, _ = run(capsys, "analyze", str(path))
    assert code == 0 and out.endswith("PASS\n")


def test_horseshoe_json_output(capsys, tmp_path):
    path = tmp_path / "h.json"
    run(capsys, "examples", "emit", "g_horseshoe", "-o", str(path))
    code, out, _ = run(capsys, "analyze", str(path), "--format", "json", "--iterates", "4")
    data = json.loads(out)
    assert code == 0 and data["passed"]
    assert data["scenarios"][0]["report"]["degrees"]["1"]["traces"] == ["2", "4", "8", "16"]


def test_output_is_deterministic(capsys, tmp_path):
    path = tmp_path / "l.json"
    run(capsys, "examples", "emit", "lcy", "-o", str(path))
    first = run(capsys, "analyze", str(path), "--format", "json")[1]
    second = run(capsys, "analyze", str(path), "--format", "json")[1]
    assert first == second


def test_malformed_json_exit_2(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"model": [1,\n')
    code, _, err = run(capsys, "analyze", str(path))
    assert code == 2 and f"{path}:2:1" in err


def test_corrupted_expected_exit_1(capsys, tmp_path):
    path = tmp_path / "lcy.json"
    run(capsys, "examples", "emit", "lcy", "--r", "3", "--q", "2", "-o", str(path))
    data = json.loads(path.read_text())
    data["expected"]["index_sequence"][2] = 1
    path.write_text(json.dumps(data))
    code, out, _ = run(capsys, "analyze", str(path), "--format", "json")
    assert code == 1
    failing = [c for c in json.loads(out)["scenarios"][0]["checks"] if c["status"] == "fail"]
    assert [c["check"] for c in failing] == ["expected"]
    assert "n=3" in failing[0]["message"]


def test_usage_errors(capsys):
    assert run(capsys, "analyze", "x.json", "--checks", "bogus")[0] == 2
    assert run(capsys, "analyze", "missing.json")[0] == 2
    assert run(capsys, "examples", "emit", "nope")[0] == 2
    assert run(capsys, "examples", "emit", "g_horseshoe", "--r", "2")[0] == 2
    assert run(capsys)[0] == 2


def test_reduce(capsys, tmp_path):
    path = tmp_path / "m.json"
    path.write_text("[[1, 1], [1, 1]]")
    code, out, _ = run(capsys, "reduce", str(path))
    assert code == 0 and json.loads(out)["reduced"] == [["2"]]


def test_series_commands(capsys):
    code, out, _ = run(capsys, "series", "invert", "--coeffs", "[1, -1]", "--order", "4")
    assert code == 0 and json.loads(out)["inverse"] == ["1"] * 5
    code, out, _ = run(capsys, "series", "eval", "--matrix", "[[0, 1], [0, 0]]", "--coeffs", "[1, 1, 1]")
    data = json.loads(out)
    assert code == 0 and data["value"] == [["1", "1"], ["0", "1"]] and all(data["resolvent_checks"].values())
    assert run(capsys, "series", "invert", "--coeffs", "[0, 1]", "--order", "2")[0] == 2
    assert run(capsys, "series", "eval", "--matrix", "[[1]]")[0] == 2


def test_stdin_input(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO("[[0, 1], [0, 0]]"))
    code, out, _ = run(capsys, "reduce", "-")
    assert code == 0 and json.loads(out)["betti_drop"] == 0
