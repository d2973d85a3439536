"""Command-line surface: dispatch, output shape, exit codes."""

import json

import pytest

from outerfa import parse, serialize
from outerfa.cli import main
from outerfa.fixtures import build_e1, build_e2, build_ea


@pytest.fixture()
def e1_file(tmp_path):
    path = tmp_path / "e1.2wa"
    path.write_text(serialize(build_e1()))
    return str(path)


@pytest.fixture()
def e2_file(tmp_path):
    path = tmp_path / "e2.2wa"
    path.write_text(serialize(build_e2()))
    return str(path)


def test_classify(e1_file, capsys):
    assert main(["classify", e1_file]) == 0
    out = capsys.readouterr().out
    assert "is_outer: true" in out
    assert "is_deterministic: false" in out


def test_run_methods_agree(e1_file, capsys):
    for word, expected in (("aa", "true"), ("ab", "false"), ("", "true")):
        for method in ("oracle", "svfa", "divide", "gap"):
            assert main(["run", e1_file, "--word", word, "--method", method]) == 0
            assert f"result: {expected}" in capsys.readouterr().out


def test_run_svfa_reports_branches(e1_file, capsys):
    assert main(["run", e1_file, "--word", "ab", "--method", "svfa"]) == 0
    out = capsys.readouterr().out
    assert "result: false" in out
    assert "accept_branch_exists: false" in out
    assert "reject_branch_exists: true" in out


def test_run_agap_on_alternating_input(e2_file, capsys):
    assert main(["run", e2_file, "--word", "", "--method", "agap"]) == 0
    assert "result: true" in capsys.readouterr().out
    assert main(["run", e2_file, "--word", "aa", "--method", "agap"]) == 0
    assert "result: false" in capsys.readouterr().out


def test_run_json_output(e1_file, capsys):
    assert main(["run", e1_file, "--word", "aa", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["result"] is True
    assert "elapsed_ms" in payload


def test_run_rejects_foreign_letters(e1_file, capsys):
    assert main(["run", e1_file, "--word", "ax"]) == 3


def test_normalize_emits_parseable_machine(e1_file, capsys):
    assert main(["normalize", e1_file]) == 0
    out = capsys.readouterr().out
    machine = parse(out)  # report lines are comments
    assert machine.n <= 18
    assert "# property4: True" in out


def test_normalized_machine_is_equivalent_via_cli(e1_file, tmp_path, capsys):
    assert main(["normalize", e1_file]) == 0
    normalized = tmp_path / "e1-normal.2wa"
    normalized.write_text(capsys.readouterr().out)
    assert main(["equiv", e1_file, str(normalized), "--max-len", "6"]) == 0
    assert "equivalent: true" in capsys.readouterr().out


def test_reach_and_dump(e1_file, capsys):
    assert main(["reach", e1_file, "--word", "aa", "--from", "pa", "--to", "ra"]) == 0
    assert "result: true" in capsys.readouterr().out
    assert main(["reach", e1_file, "--word", "aa", "--from", "pb", "--to", "rb",
                 "--dump-controller"]) == 0
    out = capsys.readouterr().out
    assert "result: false" in out
    assert "controller_states: 21" in out
    assert "SCAN_LEFT(pa)" in out


def test_segment_graph_dot(e1_file, tmp_path, capsys):
    dot = tmp_path / "graph.dot"
    assert main(["segment-graph", e1_file, "--word", "aa", "--dot", str(dot)]) == 0
    assert "edges: 4" in capsys.readouterr().out
    assert dot.read_text().startswith("digraph segments {")


def test_complement(e1_file, capsys):
    assert main(["complement", e1_file, "--word", "ab"]) == 0
    assert "result: true" in capsys.readouterr().out
    assert main(["complement", e1_file, "--word", "aa"]) == 0
    assert "result: false" in capsys.readouterr().out


def test_bounds(e1_file, capsys):
    assert main(["bounds", e1_file]) == 0
    out = capsys.readouterr().out
    assert "dfa_stack_configurations_bound: 41472" in out
    assert "svfa_total: 14117880" in out


def test_emit_dfa(tmp_path, capsys):
    src = tmp_path / "ea.2wa"
    src.write_text(serialize(build_ea()))
    out_path = tmp_path / "ea-dfa.2wa"
    assert main(["emit-dfa", str(src), "--out", str(out_path)]) == 0
    machine = parse(out_path.read_text())
    assert machine.declared_flavor == "dfa"


def test_emit_dfa_budget_exit_code(tmp_path, capsys):
    src = tmp_path / "ea.2wa"
    src.write_text(serialize(build_ea()))
    assert main(["emit-dfa", str(src), "--out", str(tmp_path / "x"),
                 "--max-states", "10"]) == 4


def test_run_budget_exit_code(e1_file, capsys):
    assert main(["run", e1_file, "--word", "aa", "--method", "svfa", "--budget", "2"]) == 4


def test_equiv_identical(e1_file, capsys):
    assert main(["equiv", e1_file, e1_file, "--max-len", "5"]) == 0
    assert "equivalent: true" in capsys.readouterr().out


def test_equiv_detects_seeded_mutation(e1_file, tmp_path, capsys):
    e1 = build_e1()
    delta = {key: list(val) for key, val in e1.delta.items()}
    delta[(3, "a")] = [(3, 1)]  # the returning sweep now runs the wrong way
    from outerfa import TwoWayAutomaton

    mutant = TwoWayAutomaton(e1.state_names, e1.alphabet, delta, e1.initial,
                             e1.accepting, declared_flavor="onfa")
    path = tmp_path / "mutant.2wa"
    path.write_text(serialize(mutant))
    assert main(["equiv", e1_file, str(path), "--max-len", "6"]) == 5
    out = capsys.readouterr().out
    assert "equivalent: false" in out
    assert "counterexample:" in out


def test_parse_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.2wa"
    bad.write_text("type: onfa\nstates q\n")
    assert main(["classify", str(bad)]) == 2


def test_normalize_alternating(e2_file, capsys):
    assert main(["normalize", e2_file, "--alternating"]) == 0
    out = capsys.readouterr().out
    machine = parse(out)
    assert machine.universal
    assert machine.n <= 18
