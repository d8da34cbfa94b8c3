from __future__ import annotations

import csv
import io
import json
import subprocess
import sys


from polybilliard.cli import main
from polybilliard.polygon import random_convex_polygon, write_polygon


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.reader(io.StringIO(text)))


def test_complexity_square(capsys):
    code, out, _ = run(capsys, "complexity", "--polygon", "square", "--max-n", "3")
    assert code == 0
    assert out == "n,p,s\n1,4,8\n2,12,16\n3,28,\n"


def test_complexity_equilateral_one(capsys):
    code, out, _ = run(capsys, "complexity", "--polygon", "equilateral", "--max-n", "1")
    assert code == 0 and rows(out)[1] == ["1", "3", ""]


def test_json_matches_csv(capsys):
    _, text, _ = run(capsys, "complexity", "--polygon", "half-equilateral", "--max-n", "6")
    _, js, _ = run(capsys, "complexity", "--polygon", "half-equilateral", "--max-n", "6", "--format", "json")
    doc = json.loads(js)
    as_csv = [[str(x) if x is not None else "" for x in row] for row in doc["rows"]]
    assert doc["columns"] == rows(text)[0] and as_csv == rows(text)[1:]


def test_word_listing(capsys):
    code, out, _ = run(capsys, "complexity", "--polygon", "square", "--max-n", "2", "--words")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 12 and lines[0] == "0,1"


def test_verify_passes(capsys):
    code, out, _ = run(capsys, "verify", "--polygon", "square", "--max-n", "8")
    assert code == 0
    table = rows(out)
    assert table[0] == ["check", "n", "lhs", "rhs", "holds"]
    assert all(r[4] == "true" for r in table[1:])
    assert {r[0] for r in table[1:]} == {"theorem1", "difference-identity", "geometric-lemma", "sampling"}


def test_verify_polygon_file(capsys, tmp_path):
    path = tmp_path / "random_quad.poly"
    write_polygon(random_convex_polygon(7), path)
    code, _, _ = run(capsys, "verify", "--polygon-file", str(path), "--max-n", "7", "--samples", "200")
    assert code == 0


def test_invalid_polygon_file(capsys, tmp_path):
    path = tmp_path / "cw.poly"
    path.write_text("QFIELD 0\nV 0 0\nV 0 1\nV 1 0\n")
    code, out, err = run(capsys, "complexity", "--polygon-file", str(path))
    assert code == 2 and out == "" and "orientation" in err
    code, _, err = run(capsys, "complexity", "--polygon-file", str(tmp_path / "missing.poly"))
    assert code == 2


def test_input_errors(capsys):
    assert run(capsys, "complexity", "--polygon", "heptagon")[0] == 2
    assert run(capsys, "asymptotics", "--case", "hexagon")[0] == 2
    assert run(capsys, "complexity", "--max-n", "0")[0] == 2
    assert run(capsys, "asymptotics", "--case", "square", "--tol", "-1")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2


def test_asymptotics(capsys):
    code, out, _ = run(capsys, "asymptotics", "--case", "square", "--max-n", "10000", "--tol", "0.01")
    table = rows(out)
    assert code == 0 and table[0] == ["n", "count", "prediction", "rel_dev"]
    assert [r[0] for r in table[1:]] == ["10", "100", "1000", "10000"]
    assert table[-1][2].startswith("0.405")
    code, out, _ = run(capsys, "asymptotics", "--case", "equilateral", "--max-n", "10000")
    assert code == 0 and rows(out)[-1][2].startswith("0.0759")
    assert run(capsys, "asymptotics", "--case", "square", "--max-n", "100", "--tol", "0.001")[0] == 1


def test_diagonals(capsys):
    code, out, _ = run(capsys, "diagonals", "--polygon", "square", "--max-links", "2")
    assert code == 0 and out == "j,exact_links,Nc_cumulative\n0,4,4\n1,4,8\n2,8,16\n"
    code, out, _ = run(capsys, "diagonals", "--polygon", "square", "--max-links", "2", "--list")
    table = rows(out)
    assert table[0] == ["start", "word", "end_x", "end_y"] and len(table) == 13
    assert ["0", "", "1/1", "1/1"] in table


def test_bispecial(capsys):
    code, out, _ = run(capsys, "bispecial", "--polygon", "square", "--n", "1")
    assert code == 0
    assert [r[1:] for r in rows(out)[1:]] == [["3", "3", "7", "2", "ok"]] * 4


def test_bispecial_empty_word_reports_failure(capsys):
    # the identity does not hold for the empty word; the row says so
    code, out, _ = run(capsys, "bispecial", "--polygon", "square", "--n", "0")
    assert code == 1
    assert rows(out)[1] == ["", "4", "4", "12", "4", "fail"]


def test_resource_cap(capsys, monkeypatch):
    monkeypatch.setenv("BILLIARD_MAX_WORDS", "100")
    assert run(capsys, "complexity", "--polygon", "square", "--max-n", "10")[0] == 3
    assert run(capsys, "diagonals", "--polygon", "square", "--max-links", "12")[0] == 3


def test_out_file_and_determinism(capsys, tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for path in (a, b):
        assert run(capsys, "verify", "--polygon", "random", "--seed", "3", "--max-n", "6", "--out", str(path))[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "polybilliard.cli", "complexity", "--polygon", "square", "--max-n", "2"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and proc.stdout == "n,p,s\n1,4,8\n2,12,\n"
