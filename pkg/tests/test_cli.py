import json

import pytest

from stable_kneser.cli import format_table, main, parse_range
from stable_kneser.formats import from_dimacs, from_graph6
from stable_kneser.generators import Params, build_g_definitional, build_stable_kneser, cycle_power
from stable_kneser.verify import CHECK_IDS, Budgets, run_triple, select_checks


def records(path):
    return [json.loads(line) for line in path.read_text().splitlines()]


def test_parse_range():
    assert parse_range("3..5") == [3, 4, 5]
    assert parse_range("2,4..5") == [2, 4, 5]
    assert parse_range("7") == [7]


@pytest.mark.parametrize("args", [
    ["verify", "--s", "3", "--k", "2"],                       # neither --n nor --n-offset
    ["verify", "--s", "3", "--k", "2", "--n", "7", "--n-offset", "1"],
    ["verify", "--s", "a..b", "--k", "2", "--n", "7"],
    ["verify", "--s", "3", "--k", "2", "--n", "7", "--suite", "nope"],
    ["verify", "--s", "3", "--k", "2", "--n", "5"],          # no valid triple
    ["frobnicate"],
])
def test_usage_errors_exit_2(args):
    assert main(args) == 2


def test_verify_single_aut(tmp_path):
    out = tmp_path / "r.jsonl"
    assert main(["verify", "--s", "3", "--k", "2", "--n", "7", "--suite", "aut", "--out", str(out)]) == 0
    recs = records(out)
    checks = {r["check"]: r for r in recs if r["type"] == "check"}
    assert checks["aut.dihedral"]["status"] == "pass"
    assert checks["aut.dihedral"]["detail"]["order"] == 14
    assert recs[-1]["type"] == "summary" and recs[-1]["failed"] == 0


def test_verify_degenerate(tmp_path):
    out = tmp_path / "r.jsonl"
    assert main(["verify", "--s", "3", "--k", "2", "--n", "6", "--out", str(out)]) == 0
    checks = {r["check"]: r for r in records(out) if r["type"] == "check"}
    assert checks["degenerate.complete"]["status"] == "pass"
    assert checks["degenerate.aut_order"]["detail"]["order"] == 6
    assert checks["aut.dihedral"]["status"] == "skipped"


def test_every_check_once_per_triple():
    recs = run_triple(Params(8, 2, 3), select_checks(["all"]))
    ids = [r["check"] for r in recs if r["type"] == "check"]
    assert ids == list(CHECK_IDS)
    assert all(r["status"] != "fail" for r in recs[:-1])


def test_s2_skips_star_structure():
    recs = run_triple(Params(7, 2, 2), select_checks(["independence"]))
    status = {r["check"]: r for r in recs if r["type"] == "check"}
    assert status["independence.stars"]["status"] == "skipped"
    assert "s >= 3" in status["independence.stars"]["reason"]
    assert status["independence.alpha"]["status"] == "pass"


def test_failure_carries_witness(monkeypatch):
    import stable_kneser.verify as verify
    monkeypatch.setattr(verify, "star_size_formula", lambda p: 99)
    recs = run_triple(Params(7, 2, 3), select_checks(["independence"]))
    bad = [r for r in recs if r.get("status") == "fail"]
    assert [r["check"] for r in bad] == ["independence.alpha"]
    assert bad[0]["witness"]["set"] and bad[0]["witness"]["formula"] == 99


def test_fail_exit_code(tmp_path, monkeypatch):
    import stable_kneser.verify as verify
    monkeypatch.setattr(verify, "count_formula", lambda p: 0)
    out = tmp_path / "r.jsonl"
    assert main(["verify", "--s", "3", "--k", "2", "--n", "7", "--suite", "independence",
                 "--out", str(out)]) == 1


def test_budget_becomes_skip():
    recs = run_triple(Params(9, 2, 3), select_checks(["aut"]), Budgets(node_budget=3))
    assert {r["status"] for r in recs if r["type"] == "check"} == {"skipped"}


def test_vertex_ceiling_skips():
    recs = run_triple(Params(9, 2, 3), select_checks(["aut"]), Budgets(max_vertices=5))
    assert all("vertices" in r["reason"] for r in recs if r["type"] == "check")


def test_determinism(tmp_path):
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    argv = ["verify", "--s", "2..3", "--k", "2", "--n-offset", "0..2", "--suite", "all"]
    assert main(argv + ["--out", str(a)]) == 0
    assert main(argv + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_env_budget(monkeypatch, tmp_path):
    monkeypatch.setenv("SKL_NODE_BUDGET", "2")
    out = tmp_path / "r.jsonl"
    assert main(["verify", "--s", "3", "--k", "2", "--n", "8", "--suite", "aut", "--out", str(out)]) == 0
    assert all(r["status"] == "skipped" for r in records(out) if r["type"] == "check")


def test_export_dimacs(tmp_path):
    out = tmp_path / "g.dimacs"
    assert main(["export", "--n", "7", "--k", "2", "--s", "3", "--which", "kg",
                 "--format", "dimacs", "--out", str(out)]) == 0
    text = out.read_text()
    assert text.startswith("p edge 7 14\n")
    assert from_dimacs(text) == build_stable_kneser(Params(7, 2, 3))


def test_export_degenerate_dimacs(capsysbinary):
    assert main(["export", "--n", "6", "--k", "2", "--s", "3", "--format", "dimacs"]) == 0
    assert capsysbinary.readouterr().out.startswith(b"p edge 3 3\n")


def test_export_graph6_g(tmp_path):
    out = tmp_path / "g.g6"
    assert main(["export", "--n", "10", "--k", "2", "--s", "3", "--which", "g",
                 "--format", "graph6", "--out", str(out)]) == 0
    g = from_graph6(out.read_bytes())
    assert g == cycle_power(10, 2) == build_g_definitional(Params(10, 2, 3))


def test_export_unwritable(tmp_path):
    assert main(["export", "--n", "7", "--k", "2", "--s", "3",
                 "--out", str(tmp_path / "missing" / "x.g6")]) == 2


def test_report_single_pass(tmp_path, capsys):
    out = tmp_path / "r.jsonl"
    main(["verify", "--s", "3", "--k", "2", "--n", "7", "--suite", "aut", "--out", str(out)])
    capsys.readouterr()
    assert main(["report", str(out)]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 2 and lines[1].startswith("(3,2,7)")
    assert "F" not in lines[1].split("\t")


def test_report_fail_rows_first():
    matrix = {(3, 2, 7): {"aut.dihedral": "pass"}, (3, 2, 9): {"aut.dihedral": "fail"},
              (3, 2, 8): {"aut.dihedral": "pass"}}
    lines = format_table(matrix).splitlines()
    assert [ln.split("\t")[0] for ln in lines[1:]] == ["(3,2,9)", "(3,2,7)", "(3,2,8)"]


def test_report_empty(capsys):
    assert main(["report"]) == 0
    assert capsys.readouterr().out == ""


def test_report_malformed_names_line(tmp_path, capsys):
    bad = tmp_path / "bad.jsonl"
    bad.write_text('{"type": "summary", "params": {"n": 7, "k": 2, "s": 3}}\nnot json\n')
    assert main(["report", str(bad)]) == 2
    assert "bad.jsonl:2" in capsys.readouterr().err
