from __future__ import annotations

import csv
import io
import json

from twentyv.cli import main, parse_report


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_table_json(capsys):
    code, out = run(capsys, "table", "--model", "20v", "--n-max", "5")
    assert code == 0
    rep = parse_report(out.out)
    assert [r["lhs"] for r in rep["records"]] == ["1", "4", "60", "3328", "678912"]
    assert rep["version"] and rep["summary"]


def test_table_pentagon_csv(capsys):
    code, out = run(capsys, "table", "--model", "20v", "--n-max", "4", "-k", "0", "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out.out)))
    assert rows[0] == ["model", "n", "k", "value", "status"]
    assert [r[3] for r in rows[1:]] == ["1", "3", "29", "901"]


def test_refined_commands(capsys):
    code, out = run(capsys, "refined", "--model", "dt", "--n", "3")
    assert code == 0
    assert parse_report(out.out)["records"][0]["lhs"] == ["37", "19", "4"]
    code, out = run(capsys, "refined", "--model", "6v", "--n", "3")
    rec = parse_report(out.out)["records"][0]
    assert rec["lhs"] == ["4", "7", "4"] and rec["rhs"] == "15"


def test_verify_text(capsys):
    code, out = run(capsys, "verify", "--suite", "binomial", "--n-max", "4", "--format", "text")
    assert code == 0
    assert out.out.count("PASS") == 4
    assert "summary:" in out.out


def test_oracle_command(capsys):
    code, out = run(capsys, "oracle", "--model", "dt", "--n", "3", "--refined")
    assert code == 0
    rec = parse_report(out.out)["records"][0]
    assert "60" in json.dumps(rec)


def test_usage_errors(capsys):
    code, out = run(capsys, "oracle", "--model", "20v", "--n", "9")
    assert code == 2 and "error" in out.err
    code, _ = run(capsys, "table", "--model", "dt", "--n-min", "3", "--n-max", "2")
    assert code == 2


def test_output_file_and_render(capsys, tmp_path):
    dest = tmp_path / "r.json"
    code, _ = run(capsys, "table", "--model", "dt", "--n-max", "3", "--output", str(dest))
    assert code == 0
    assert len(json.loads(dest.read_text())["records"]) == 3
    svg = tmp_path / "f.svg"
    code, _ = run(capsys, "render", "--n", "3", "--output", str(svg))
    assert code == 0 and svg.read_text().startswith("<svg")
