import json

import pytest

from conftest import LINE
from fewnomial_cli import main


def test_bounds_table(capsys):
    assert main(["bounds", "--t-max", "5"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["bound_t"] == {"3": 5, "4": 11, "5": 23}


def test_bounds_with_system(capsys):
    assert main(["bounds", LINE, "--t-max", "3"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["report"]["counts"][0]["count"] == 1


def test_analyze_to_file(tmp_path):
    out = tmp_path / "report.json"
    assert main(["analyze", LINE, "--out", str(out)]) == 0
    report = json.loads(out.read_text())
    assert report["flags"]["count"] == 1
    assert "timings" not in report


def test_analyze_reads_file(tmp_path, capsys):
    source = tmp_path / "system.txt"
    source.write_text(LINE + "\n")
    assert main(["analyze", "--file", str(source), "--timings"]) == 0
    assert "timings" in json.loads(capsys.readouterr().out)


@pytest.mark.parametrize(
    "argv",
    [
        ["analyze", "x + ; -1 + x + y"],
        ["analyze"],
        ["analyze", "x - y ; x + y"],
        ["analyze", "x^65 - y ; -1 + x + y"],
        ["analyze", LINE, "--precision", "2"],
        ["analyze", LINE, "--config", "absent.toml"],
        ["sample", LINE, "--n", "1"],
        ["search"],
        ["search", "--support", "0:0,1:0", "0:0,x,0:1"],
        ["analyze", '{"g": "-1 + x + y"}'],
        ["analyze", '{"f": [[1, 2]], "g": "-1 + x + y"}'],
    ],
)
def test_usage_errors(argv, capsys):
    assert main(argv) == 1
    assert "fewnomial:" in capsys.readouterr().err


def test_unknown_command_exits_with_usage_code():
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 1


def test_sample_csv(capsys):
    assert main(["sample", LINE, "--n", "4"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 5
    assert lines[0] == "x,value_lo,value_hi"


def test_search_with_zero_trials(capsys):
    assert main(["search", "--support", "0:0,1:0,0:1", "0:0,1:0,0:1", "--trials", "0"]) == 0
    summary = json.loads(capsys.readouterr().out)
    assert summary["trials"] == 0


def test_search_appends_records(tmp_path, capsys):
    out = tmp_path / "records.jsonl"
    argv = ["search", "--support", "1:0,0:1", "0:0,1:0,0:1", "--trials", "3", "--seed", "1",
            "--threshold", "0", "--out", str(out)]
    assert main(argv) == 0
    summary = json.loads(capsys.readouterr().out)
    assert summary["trials"] == 3
    lines = out.read_text().splitlines()
    assert len(lines) == summary["records"]
    assert all(json.loads(line)["t"] == 2 for line in lines)
