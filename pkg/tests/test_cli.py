from __future__ import annotations

import csv
import io
import json
import subprocess
import sys

import pytest

from rainbowlab import analysis, cli, constructions
from rainbowlab.ecgraph import dumps, rainbow_complete, write_graph
from rainbowlab.errors import InvariantViolation


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_construct_matches_library(tmp_path, capsys):
    out = tmp_path / "g.json"
    code, _, _ = run(capsys, "construct", "--family", "G2", "--n", "9", "--k", "3", "--out", str(out))
    assert code == 0
    assert out.read_text() == dumps(constructions.build_construction("G2", 9, 3)) + "\n"
    code, stdout, _ = run(capsys, "construct", "--family", "G4", "--n", "6", "--k", "2")
    assert code == 0 and stdout == dumps(constructions.build_construction("G4", 6, 2)) + "\n"


def test_construct_then_search(tmp_path, capsys):
    g = tmp_path / "g.json"
    run(capsys, "construct", "--family", "G2", "--n", "9", "--k", "3", "--out", str(g))
    code, out, _ = run(capsys, "search", "packing", "--in", str(g), "--k", "3", "--mode", "global")
    assert code == 1 and "status=NONE" in out
    w = tmp_path / "w.json"
    code, out, _ = run(capsys, "search", "packing", "--in", str(g), "--k", "2", "--mode", "global",
                       "--witness-out", str(w))
    assert code == 0
    wit = json.loads(w.read_text())
    assert wit["mode"] == "global" and len(wit["triples"]) == 2
    code, _, _ = run(capsys, "search", "packing", "--in", str(g), "--k", "3", "--mode", "global",
                     "--budget", "3")
    assert code == 2


def test_search_with_workers(tmp_path, capsys):
    g = tmp_path / "g.json"
    write_graph(rainbow_complete(9), g)
    code, out, _ = run(capsys, "--workers", "2", "search", "packing", "--in", str(g), "--k", "3")
    assert code == 0 and "status=FOUND" in out


def test_workers_env_default(monkeypatch):
    monkeypatch.setenv("RAINBOWLAB_WORKERS", "3")
    assert cli.build_parser().parse_args(["report", "transitions", "--k", "5"]).workers == 3
    monkeypatch.setenv("RAINBOWLAB_WORKERS", "junk")
    assert cli.build_parser().parse_args(["report", "transitions", "--k", "5"]).workers == 1


def test_report_transitions(capsys):
    code, out, _ = run(capsys, "report", "transitions", "--k", "10")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["family"] for r in rows] == ["G4", "G3", "G2", "G1"]
    assert [r["n_high"] for r in rows] == ["33.0625", "34", "52.5", "inf"]
    assert rows[0]["n_high_exact"] == "529/16"
    code, out, _ = run(capsys, "report", "transitions", "--k", "10", "--derived")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert rows[2]["n_high"] == "39"


def test_report_transitions_repeating_decimal(capsys):
    code, out, _ = run(capsys, "report", "transitions", "--k", "5")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert rows[0]["n_high_exact"] == "52/3"
    assert rows[0]["n_high"] == "17.333333"


def test_report_disprove(capsys, tmp_path):
    code, out, _ = run(capsys, "report", "disprove", "--k", "10", "--n-min", "33", "--n-max", "45")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [int(r["n"]) for r in rows] == list(range(33, 46))
    assert [int(r["n"]) for r in rows if r["violated"] == "true"] == list(range(34, 39))
    row34 = rows[1]
    assert (row34["G3"], row34["conjecture1"], row34["best_family"]) == ("426", "411", "G3")
    assert rows[0]["G2"] == ""
    # re-running into a file gives identical bytes
    f = tmp_path / "d.csv"
    run(capsys, "report", "disprove", "--k", "10", "--n-min", "33", "--n-max", "45", "--csv", str(f))
    first = f.read_text()
    run(capsys, "report", "disprove", "--k", "10", "--n-min", "33", "--n-max", "45", "--csv", str(f))
    assert f.read_text() == first == out


def test_report_curves(capsys, tmp_path):
    f = tmp_path / "c.csv"
    code, _, _ = run(capsys, "report", "curves", "--k", "10", "--n-max", "60", "--csv", str(f))
    assert code == 0
    rows = list(csv.reader(io.StringIO(f.read_text())))
    assert rows[0] == ["n", "c(G1)", "c(G2)", "c(G3)", "c(G4)"]
    assert len(rows) == 1 + 31
    assert rows[1] == [str(x) if x is not None else "" for x in constructions.figure5_curves(10, 30)[0]]


def test_report_dirac(tmp_path, capsys):
    g = tmp_path / "g.json"
    write_graph(rainbow_complete(12), g)
    code, out, _ = run(capsys, "report", "dirac", "--in", str(g), "--k", "2")
    assert code == 0
    d = json.loads(out)
    assert d["status"] == "FOUND" and d["theorem_violation"] is False


def test_analyze_rt(tmp_path, capsys):
    g = tmp_path / "g.json"
    write_graph(rainbow_complete(5), g)
    code, out, _ = run(capsys, "analyze", "rt", "--in", str(g), "--per-vertex", "--per-edge")
    d = json.loads(out)
    assert code == 0 and d["rt"] == 10 and d["per_vertex"] == [6] * 5
    assert len(d["per_edge"]) == 10 and all(c == 3 for *_, c in d["per_edge"])


def test_analyze_claims_and_lemmas(tmp_path, capsys):
    g = tmp_path / "g.json"
    write_graph(constructions.build_construction("G4", 12, 3), g)
    p = tmp_path / "p.json"
    p.write_text(json.dumps({"triples": [[0, 1, 2], [3, 4, 5]]}))
    code, out, _ = run(capsys, "analyze", "claims", "--in", str(g), "--packing", str(p))
    assert code == 0
    d = json.loads(out)
    assert d["applicable"] and d["context"]["centers"]
    assert all(c["verdict"] != "FAIL" for c in d["claims"])

    ctx = {"triples": [[0, 1, 2], [3, 4, 5]], "centers": [], "wings": []}
    p.write_text(json.dumps(ctx))
    code, out, _ = run(capsys, "analyze", "claims", "--in", str(g), "--packing", str(p))
    assert json.loads(out)["context"] == ctx

    write_graph(rainbow_complete(6), g)
    code, out, _ = run(capsys, "analyze", "lemmas", "--in", str(g), "--k", "4")
    d = json.loads(out)
    assert code == 0 and d["rt"] == 20 and d["lemma3_bound"] == "20" and d["lemma3_ok"] is True


def test_oracle_ar(tmp_path, capsys):
    w = tmp_path / "w.json"
    code, out, _ = run(capsys, "oracle", "ar", "--n", "5", "--k", "1", "--witness-out", str(w))
    assert code == 0 and "ar(5,1C3) = 4" in out and "completed=true" in out
    assert json.loads(w.read_text())["n"] == 5
    code, out, _ = run(capsys, "oracle", "ar", "--n", "6", "--k", "2", "--budget", "100")
    assert code == 2 and "completed=false" in out


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["bogus"],
        ["construct", "--family", "G9", "--n", "9", "--k", "3"],
        ["construct", "--family", "G2", "--n", "5", "--k", "3"],
        ["search", "packing", "--in", "x.json", "--k", "two"],
        ["report", "disprove", "--k", "10", "--n-min", "50", "--n-max", "40"],
        ["report", "transitions", "--k", "2"],
        ["oracle", "ar", "--n", "5", "--k", "2"],
    ],
)
def test_usage_errors(argv, capsys):
    code, _, err = run(capsys, *argv)
    assert code == 64 and err


def test_parse_errors(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "analyze", "rt", "--in", str(bad))[0] == 65
    assert run(capsys, "analyze", "rt", "--in", str(tmp_path / "missing.json"))[0] == 65
    bad.write_text(json.dumps({"n": 3, "edges": [[0, 0, 1]]}))
    assert run(capsys, "search", "packing", "--in", str(bad), "--k", "1")[0] == 65
    g = tmp_path / "g.json"
    write_graph(rainbow_complete(6), g)
    p = tmp_path / "p.json"
    p.write_text(json.dumps({"triples": [[0, 1, 2], [2, 3, 4]]}))
    assert run(capsys, "analyze", "claims", "--in", str(g), "--packing", str(p))[0] == 65
    p.write_text("[]")
    assert run(capsys, "analyze", "claims", "--in", str(g), "--packing", str(p))[0] == 65


def test_invariant_violation_exit(tmp_path, capsys, monkeypatch):
    g = tmp_path / "g.json"
    write_graph(rainbow_complete(5), g)

    def broken(_g):
        raise InvariantViolation("simulated")

    monkeypatch.setattr(analysis, "rt_counts", broken)
    code, _, err = run(capsys, "analyze", "rt", "--in", str(g))
    assert code == 70 and "simulated" in err


def test_atomic_write_leaves_no_temp(tmp_path, capsys):
    out = tmp_path / "g.json"
    run(capsys, "construct", "--family", "G1", "--n", "8", "--k", "2", "--out", str(out))
    assert [p.name for p in tmp_path.iterdir()] == ["g.json"]


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "rainbowlab", "report", "transitions", "--k", "10"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout.startswith("family,")


def test_bad_parameter_on_valid_file_is_usage_error(tmp_path, capsys):
    g = tmp_path / "g.json"
    write_graph(rainbow_complete(6), g)
    assert run(capsys, "search", "packing", "--in", str(g), "--k", "0")[0] == 64
    assert run(capsys, "analyze", "lemmas", "--in", str(g), "--k", "0")[0] == 64
