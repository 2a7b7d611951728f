import io
import json
import sys

import pytest

from dpcolor.configurations import check_hypothesis, find_special_9_faces, find_tetrads
from dpcolor.correspondence import CorrAssignment
from dpcolor.errors import GraphFormatError, InputError
from dpcolor.harness import cli
from dpcolor.harness.corpus import PROFILES, generate_corpus, generate_graphs
from dpcolor.harness.document import GraphDocument, document_from, emit, parse_graph
from dpcolor.harness.pipeline import (EXIT_BUDGET, EXIT_INPUT, EXIT_NEGATIVE, EXIT_OK,
                                      run_pipeline)
from dpcolor.plane_graph import cycle_graph, from_drawing

C3 = """{
  "format_version": 1,
  "k": 3,
  "outer_face": [0, 1, 2],
  "rotation": [[2, 1], [0, 2], [1, 0]]
}
"""


def k4_document(k=3):
    pts = [(0, 10), (-9, -5), (9, -5), (0, 0)]
    g = from_drawing(pts, [(0, 1), (1, 2), (2, 0), (3, 0), (3, 1), (3, 2)])
    return document_from(g, k)


def c12_text():
    return emit(document_from(cycle_graph(12), 3))


# ---------------------------------------------------------------- parsing


def test_parse_c3():
    doc = parse_graph(C3)
    g = doc.graph()
    assert len(g.faces) == 2 and all(f.length == 3 for f in g.faces)
    assert doc.assignment(g) == CorrAssignment.identity(g, 3)


def test_colour_outside_range_names_edge():
    data = json.loads(C3)
    data["matchings"] = {"0-1": [[1, 4]]}
    with pytest.raises(GraphFormatError) as exc:
        parse_graph(json.dumps(data))
    assert exc.value.field == "matchings.0-1"
    assert "0-1" in str(exc.value)


def test_round_trip_is_byte_identical():
    data = json.loads(C3)
    data["matchings"] = {"0-1": [[1, 2], [2, 1]], "0-2": [], "1-2": [[3, 3]]}
    data["precolored"] = {"2": 1}
    text = json.dumps(data, sort_keys=True, indent=2) + "\n"
    assert emit(parse_graph(text)) == text
    canonical = emit(parse_graph(C3))
    assert emit(parse_graph(canonical)) == canonical


def test_syntax_error_has_position():
    with pytest.raises(GraphFormatError) as exc:
        parse_graph('{\n  "k": 3,\n  "rotation": [1, 2\n}')
    assert exc.value.line == 4 and exc.value.column is not None


@pytest.mark.parametrize("patch,field", [
    ({"extra": 1}, "extra"),
    ({"matchings": {"1-0": []}}, "matchings.1-0"),
    ({"matchings": {"0-5": []}}, "matchings.0-5"),
    ({"rotation": [[1, 2], [2], [1, 0]]}, "rotation[0]"),
    ({"k": 0}, "k"),
    ({"format_version": 2}, "format_version"),
    ({"outer_face": [0, 1]}, "outer_face"),
    ({"precolored": {"0": 7}}, "precolored.0"),
])
def test_semantic_errors_name_the_field(patch, field):
    data = {**json.loads(C3), **patch}
    with pytest.raises(GraphFormatError) as exc:
        parse_graph(json.dumps(data))
    assert exc.value.field == field


def test_missing_field():
    data = json.loads(C3)
    del data["rotation"]
    with pytest.raises(GraphFormatError) as exc:
        parse_graph(json.dumps(data))
    assert exc.value.field == "rotation"


# ----------------------------------------------------------------- corpus


@pytest.mark.parametrize("profile", PROFILES)
def test_corpus_is_deterministic_and_valid(profile):
    a = [emit(d) for d in generate_corpus(3, 5, profile)]
    b = [emit(d) for d in generate_corpus(3, 5, profile)]
    assert a == b
    for text in a:
        g = parse_graph(text).graph()
        assert 9 <= g.outer.length <= 12
        assert check_hypothesis(g)[0]
        if profile == "tetrad-gadget":
            assert find_tetrads(g)
        if profile == "special9-gadget":
            assert find_special_9_faces(g)


def test_sparse_girth_count_ten():
    gs = generate_graphs(0, 10, "sparse-girth")
    assert len(gs) == 10 and all(check_hypothesis(g)[0] for g in gs)


def test_corpus_bad_profile():
    with pytest.raises(InputError):
        generate_corpus(0, 1, "dense")
    with pytest.raises(InputError):
        generate_corpus(0, -1, "sparse-girth")


def test_different_seeds_differ():
    a = [emit(d) for d in generate_corpus(1, 3, "sparse-girth")]
    b = [emit(d) for d in generate_corpus(2, 3, "sparse-girth")]
    assert a != b


# --------------------------------------------------------------- pipeline


def test_discharge_on_c12():
    rep = run_pipeline(c12_text(), "discharge")
    assert rep.status == EXIT_NEGATIVE
    assert rep.results["verdict"] == "FAIL"
    assert rep.results["outer_final"] == "0"
    assert rep.results["citations"][0].startswith("all-vertices-on-boundary")
    assert run_pipeline(c12_text(), "verify-dichotomy").status == EXIT_OK


def test_solve_k4():
    rep = run_pipeline(k4_document(), "solve")
    assert rep.status == EXIT_NEGATIVE and rep.results["solution"] == "none"
    rep = run_pipeline(k4_document(4), "solve")
    assert rep.status == EXIT_OK


def test_check_hypothesis_k4():
    rep = run_pipeline(k4_document(), "check-hypothesis")
    assert rep.status == EXIT_NEGATIVE and rep.results["adjacent_pairs"]


def test_faces_and_configs():
    rep = run_pipeline(C3, "faces")
    assert rep.status == EXIT_OK and rep.results["euler"] == 2
    assert run_pipeline(c12_text(), "configs").status == EXIT_OK


def test_choosable_reports_witness():
    rep = run_pipeline(emit(document_from(cycle_graph(5), 2)), "choosable")
    assert rep.status == EXIT_NEGATIVE and rep.results["witness_lists"]
    assert rep.results["dp_all_consistent"] is False


def test_budget_and_input_statuses():
    rep = run_pipeline(c12_text(), "choosable", budget_vertices=8)
    assert rep.status == EXIT_BUDGET
    assert run_pipeline("{", "faces").status == EXIT_INPUT
    assert run_pipeline(C3, "nonsense").status == EXIT_INPUT


def test_report_is_deterministic():
    text = emit(generate_corpus(4, 1, "tetrad-gadget")[0])
    for command in ("discharge", "configs", "verify-dichotomy"):
        a = run_pipeline(text, command, seed=9).machine()
        b = run_pipeline(text, command, seed=9).machine()
        assert a == b
        assert json.loads(a)["input_sha256"] == run_pipeline(text, "faces").digest


# -------------------------------------------------------------------- CLI


def test_cli_runs_a_document(tmp_path, capsys):
    path = tmp_path / "c12.json"
    path.write_text(c12_text())
    status = cli.main(["--input", str(path), "--command", "discharge", "--emit", "machine"])
    out = json.loads(capsys.readouterr().out)
    assert status == EXIT_NEGATIVE == out["exit_status"]
    assert out["command"] == "discharge"


def test_cli_reads_stdin(monkeypatch, capsys):
    monkeypatch.setattr(sys, "stdin", io.StringIO(C3))
    assert cli.main(["--input", "-", "--command", "faces"]) == EXIT_OK
    assert "exit status: 0" in capsys.readouterr().out


def test_cli_generate(tmp_path, capsys):
    status = cli.main(["--command", "generate", "--profile", "boundary-heavy", "--count", "2",
                       "--seed", "7", "--output", str(tmp_path)])
    assert status == EXIT_OK
    files = sorted(tmp_path.iterdir())
    assert len(files) == 2
    for f in files:
        parse_graph(f.read_text())


def test_cli_missing_input(capsys):
    assert cli.main(["--command", "faces"]) == EXIT_INPUT
    assert cli.main(["--command", "faces", "--input", "/nonexistent.json"]) == EXIT_INPUT


def test_document_dataclass_defaults():
    doc = GraphDocument(2, ((1,), (0,)), (0, 1))
    assert doc.matchings is None and doc.format_version == 1
