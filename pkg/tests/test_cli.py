import json

from click.testing import CliRunner

from mgcolor.cli import main
from mgcolor.edge_color import EdgeColoring, check_proper
from mgcolor.multigraph import Multigraph, complete_graph


def run(*args, input=None):
    return CliRunner().invoke(main, list(args), input=input)


def graph_file(tmp_path, g: Multigraph, name="g.txt"):
    p = tmp_path / name
    p.write_text(g.to_text())
    return str(p)


def test_gen_petersen_minus_vertex():
    r = run("gen", "petersen-minus-vertex")
    assert r.exit_code == 0
    g = Multigraph.from_text(r.output)
    assert g.n == 9 and g.edge_count() == 12
    assert sorted(g.degrees()) == [2, 2, 2] + [3] * 6


def test_gen_complete_and_circulant(tmp_path):
    out = tmp_path / "k6.txt"
    assert run("gen", "complete", "6", "--out", str(out)).exit_code == 0
    assert Multigraph.from_text(out.read_text()) == complete_graph(6)
    r = run("gen", "circulant", "8", "4")
    g = Multigraph.from_text(r.output)
    assert g.n == 8 and g.is_regular() and g.max_degree == 4
    assert run("gen", "complete", "6", "--dot").output.startswith("graph")


def test_gen_random_is_seeded():
    a = run("gen", "random", "10", "--max-degree", "6", "--min-degree", "3", "--seed", "2").output
    b = run("gen", "random", "10", "--max-degree", "6", "--min-degree", "3", "--seed", "2").output
    assert a == b
    g = Multigraph.from_text(a)
    assert g.is_simple() and g.max_degree <= 6


def test_gen_usage_errors():
    assert run("gen", "complete").exit_code != 0
    assert run("gen", "random", "5", "--max-degree", "9").exit_code == 1


def test_classify_examples(tmp_path):
    r = run("gen", "petersen-minus-vertex")
    res = json.loads(run("classify", "--input", "-", input=r.output).output)["results"]
    assert res["chromatic_index"] == 4 and res["class"] == 2
    assert res["overfull"]["mode"] == "certified-absent" and res["critical"]
    assert res["conjecture"]["biconditional_holds"] is False
    res = json.loads(run("classify", "--input", graph_file(tmp_path, complete_graph(5))).output)["results"]
    assert res["chromatic_index"] == 5 and res["overfull"]["mode"] == "found"
    res = json.loads(run("classify", "--input", graph_file(tmp_path, complete_graph(6))).output)["results"]
    assert res["chromatic_index"] == 5 and res["class"] == 1


def test_classify_partial_exit_code(tmp_path):
    r = run("classify", "--input", graph_file(tmp_path, complete_graph(8)), "--max-n", "6")
    assert r.exit_code == 2 and "partial" in json.loads(r.output)["results"]


def test_missing_file_exits_one():
    r = run("classify", "--input", "/nonexistent/graph.txt")
    assert r.exit_code == 1 and "cannot read" in r.output


def test_realize(tmp_path):
    r = run("realize", "3", "3")
    assert r.exit_code == 0
    out = json.loads(r.output)["results"][0]
    assert out["p"] == 2 and all(out["properties"].values())


def test_pipeline_k6_writes_verified_coloring(tmp_path):
    path = graph_file(tmp_path, complete_graph(6))
    report = tmp_path / "report.json"
    r = run("pipeline", "--input", path, "--rescue", "--out", str(report))
    assert r.exit_code == 0
    rep = json.loads(report.read_text())
    assert rep["results"]["outcome"] == "complete" and rep["colors"] == 5
    col = EdgeColoring.from_text(complete_graph(6), 5, (tmp_path / "report.coloring.txt").read_text())
    assert col.is_total() and check_proper(complete_graph(6), col).passed
    assert "seconds" in rep["timings"]


def test_pipeline_structured_failure_exits_two(tmp_path):
    r = run("pipeline", "--input", graph_file(tmp_path, complete_graph(6)))
    assert r.exit_code == 2
    res = json.loads(r.output)["results"]
    assert res["outcome"] == "failed" and res["step"] == "inside-coloring"


def test_pipeline_k5_is_rejected_as_overfull(tmp_path):
    r = run("pipeline", "--input", graph_file(tmp_path, complete_graph(5)), "--rescue")
    assert r.exit_code == 2
    res = json.loads(r.output)["results"]
    assert res["step"] == "regularize" and res["diagnostics"]["witness"]["mode"] == "found"


def test_pipeline_bad_eta_advice(tmp_path):
    r = run("pipeline", "--input", graph_file(tmp_path, complete_graph(6)), "--eta", "1/100")
    assert r.exit_code == 1 and "use eta >= 1/6" in r.output
    r = run("pipeline", "--input", graph_file(tmp_path, complete_graph(6)), "--eta", "abc")
    assert r.exit_code == 1


def test_pipeline_same_seed_same_report(tmp_path):
    path = graph_file(tmp_path, complete_graph(8))
    reps = []
    for _ in range(2):
        r = run("pipeline", "--input", path, "--rescue", "--seed", "7")
        d = json.loads(r.output)
        d.pop("timings")
        reps.append(json.dumps(d, sort_keys=True))
    assert reps[0] == reps[1]
