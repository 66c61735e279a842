"""Command-line interface: output formats, exit codes, determinism."""
import csv
import io
import json
import subprocess
import sys

import pytest

from reductive_sheets import cli
from reductive_sheets.rootsys import GroupSpec
from reductive_sheets.sheets import enumerate_sheets


def run(*argv):
    out = io.StringIO()
    code = cli.run(list(argv), out)
    return code, out.getvalue()


def test_pseudolevis_a1_and_c2():
    code, text = run("pseudolevis", "--type", "A1", "--format", "json")
    assert code == 0 and len(json.loads(text)["payload"]) == 2
    code, text = run("pseudolevis", "--type", "C2", "--isogeny", "adjoint", "--format", "json")
    rows = json.loads(text)["payload"]
    assert len(rows) == 5
    bad = [r for r in rows if not r["is_levi"]]
    assert len(bad) == 1 and bad[0]["component_group_order"] == 2 and bad[0]["J"] == "{0,2}"


def test_sheets_a2_and_c2():
    code, text = run("sheets", "--type", "A2", "--format", "json")
    rows = json.loads(text)["payload"]
    assert code == 0 and len(rows) == 3 and all(r["is_dixmier"] for r in rows)
    code, text = run("sheets", "--type", "C2", "--format", "json")
    rec = json.loads(text)
    assert rec["schema_version"] == cli.SCHEMA_VERSION
    assert rec["query"] == {"command": "sheets", "type": "C2", "isogeny": "adjoint", "central_torus_rank": 0}
    single = [r for r in rec["payload"] if r["is_single_class"] and r["n"] == 4 and not r["is_levi"]]
    assert len(single) == 1 and single[0]["dim"] == 4
    keys = [(r["n"], r["dim"]) for r in rec["payload"]]
    assert keys == sorted(keys)


def test_json_round_trip_matches_library():
    _, text = run("sheets", "--type", "B3", "--isogeny", "sc", "--format", "json")
    rows = json.loads(text)["payload"]
    sheets = enumerate_sheets(GroupSpec.parse("B3", "simply_connected"))
    assert rows == [cli.sheet_row(s) for s in sheets]
    assert json.loads(json.dumps(rows)) == rows


def test_csv_and_text():
    _, text = run("sheets", "--type", "C2", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(text)))
    assert len(rows) == 6 and rows[0]["class"] == "C2:[1^4]"
    _, text = run("sheets", "--type", "C2")
    assert text.splitlines()[0].startswith("# sheets C2 (adjoint), 6 rows")
    assert text.rstrip().endswith("sheets=6, sheets_unquotiented=6")


def test_pairs_view():
    _, text = run("sheets", "--type", "C2", "--pairs-view", "--format", "json")
    rec = json.loads(text)
    assert rec["query"]["view"] == "pairs"
    ex = [r for r in rec["payload"] if r["M"].startswith("A1+A1")]
    assert ex[0]["levi"] == "C2" and ex[0]["exceptional_in_levi"]


def test_jordan_command():
    _, text = run("jordan", "--type", "C2", "--format", "json")
    assert len(json.loads(text)["payload"]) == 12


def test_poset_counts_match_sheets():
    code, dot = run("poset", "--type", "A1")
    assert code == 0 and dot.count("shape=") == 3 and dot.count("doubleoctagon") == 2
    for t in ["C2", "B3", "A1xA2"]:
        _, dot = run("poset", "--type", t)
        _, text = run("sheets", "--type", t, "--format", "json")
        assert dot.count("doubleoctagon") == len(json.loads(text)["payload"]) > 0


def test_intermediate_weights():
    code, text = run("sheets", "--type", "D4", "--isogeny", "intermediate", "--weights", "0,0,0,1",
                     "--format", "json")
    assert code == 0 and json.loads(text)["query"]["weights"] == [[0, 0, 0, 1]]


@pytest.mark.parametrize("argv,code", [
    (["sheets", "--type", "Z9"], 2),
    (["sheets"], 2),
    ([], 2),
    (["sheets", "--type", "C2", "--format", "xml"], 2),
    (["sheets", "--type", "A3", "--isogeny", "intermediate", "--weights", "1,x"], 2),
    (["sheets", "--type", "E8"], 3),
    (["poset", "--type", "G2"], 3),
    (["poset", "--type", "B3", "--max-rank", "2"], 4),
])
def test_exit_codes(argv, code, capsys):
    assert cli.run(argv, io.StringIO()) == code
    assert capsys.readouterr().err


def test_data_dir_flag_wins(tmp_path, monkeypatch):
    monkeypatch.setenv("REDUCTIVE_SHEETS_DATA", str(tmp_path))  # empty directory
    from reductive_sheets import unipotent as up
    code, _ = run("sheets", "--type", "G2", "--data-dir", str(up.DEFAULT_DATA_DIR))
    assert code == 0
    code, _ = run("sheets", "--type", "G2", "--data-dir", str(tmp_path))
    assert code == 3


def test_determinism_subprocess():
    cmd = [sys.executable, "-m", "reductive_sheets", "sheets", "--type", "B3", "--format", "json"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a
