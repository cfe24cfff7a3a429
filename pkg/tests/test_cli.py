from __future__ import annotations

import json
import subprocess
import sys

import pytest

from symdual.cli import main

EDGE = "v\nw\nv -> w : g\n"
PARALLEL = "v\nw\nv -> w : g1\nv -> w : g2\n"


@pytest.fixture
def graph_file(tmp_path):
    def make(text: str, name: str = "g.txt"):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)

    return make


def run(capsys, *argv):
    status = main(list(argv))
    out = capsys.readouterr().out
    return status, out


def run_json(capsys, *argv):
    status, out = run(capsys, *argv)
    assert out.count("\n") == 1 or "--format" in argv
    return status, json.loads(out)


def test_check(capsys, graph_file):
    assert run_json(capsys, "check", graph_file(EDGE)) == (
        0,
        {"bipartite": True, "directed_cycle": False, "tree": True},
    )


def test_sym_report(capsys, graph_file):
    status, report = run_json(capsys, "sym", graph_file(EDGE), "-n", "2")
    assert status == 0
    assert report == {"f_vector": [3, 3, 1], "euler": 1, "betti": [1, 0, 0], "torsion": [[], [], []], "simplicial": True}


def test_sym_dump_cells(capsys, graph_file):
    _, report = run_json(capsys, "sym", graph_file(EDGE), "-n", "2", "--dump-cells")
    assert report["cells"]["cells"][2] == ["[g:(1,1)]"]
    assert report["cells"]["faces"]["[g:(1,1)]"] == ["[g:(1) v:1]", "[g:(2)]", "[g:(1) w:1]"]


def test_compare(capsys, graph_file):
    status, report = run_json(capsys, "compare", graph_file(PARALLEL), "-n", "2")
    assert status == 0 and report["match"] is True and report["f_vector"] == [3, 7, 4]


def test_product(capsys, graph_file):
    _, report = run_json(capsys, "product", graph_file(EDGE), "-n", "3", "--threads", "1")
    assert report["f_vector"] == [8, 19, 18, 6] and report["betti"] == [1, 0, 0, 0]


def test_expand(capsys, graph_file):
    _, report = run_json(capsys, "expand", graph_file(EDGE), "--set", "1,3")
    assert report["nodes"] == ["v@{1,3}", "w@{1,3}", "({1,3}|g|1)"]
    assert [a["label"] for a in report["arrows"]] == ["g#1", "g#3"]


def test_strata_and_tuples(capsys, graph_file):
    path = graph_file(EDGE)
    _, report = run_json(capsys, "strata", path, "-n", "2", "--set", "2")
    assert report["count"] == 1 and report["strata"] == [{"b": {"v": 1, "w": 1}, "s": {"g": []}}]
    _, report = run_json(capsys, "tuples", path, "-n", "2", "--set", "2")
    assert report["tuples"] == [["v@{2}", "w@{2}"], ["w@{2}", "v@{2}"]]


def test_facets(capsys, graph_file):
    _, report = run_json(capsys, "facets", graph_file(EDGE), "-n", "2", "--set", "1,2,3")
    (entry,) = report["strata"]
    assert [f["I"] for f in entry["facets"]] == [[2, 3], [1, 3], [1, 2]]
    assert entry["facets"][0]["stratum"] == {"b": {"v": 1, "w": 0}, "s": {"g": [1]}}
    z = next(t for t in report["tuples"] if t["tuple"] == ["({1,2,3}|g|1)", "({1,2,3}|g|2)"])
    assert z["facets"][1]["tuple"] == ["({1,3}|g|1)", "({1,3}|g|1)"]


def test_skeleton(capsys, graph_file):
    text = "v1\nw\nv2\nv1 -> w : a\nv2 -> w : b\n"
    _, report = run_json(capsys, "skeleton", graph_file(text), "-n", "2", "--weights", "v1=0", "w=0", "v2=1")
    assert report["f_vector"] == [3, 3, 1]
    assert report["minimal_vertices"] == ["v1", "w"]
    assert report["induced_weights"]["[v2:2]"] == 2


def test_text_format(capsys, graph_file):
    status, out = run(capsys, "sym", graph_file(EDGE), "-n", "2", "--format", "text")
    assert status == 0
    assert "f_vector    [3, 3, 1]" in out


@pytest.mark.parametrize(
    "argv, status",
    [
        (["sym", "{path}"], 2),
        (["sym", "{path}", "-n", "-1"], 2),
        (["frobnicate", "{path}"], 2),
        (["strata", "{path}", "-n", "2"], 2),
        (["skeleton", "{path}", "-n", "2"], 2),
        (["skeleton", "{path}", "-n", "2", "--weights", "v"], 2),
        (["skeleton", "{path}", "-n", "2", "--weights", "v=0"], 1),
        (["strata", "{path}", "-n", "2", "--set", "4"], 1),
        (["strata", "{path}", "-n", "2", "--set", "1,x"], 1),
        (["sym", "{missing}", "-n", "1"], 1),
        (["sym", "{path}", "-n", "3", "--max-top-cells", "0"], 1),
        (["facets", "{path}", "-n", "2", "--set", "1,2", "--format", "text"], 0),
    ],
)
def test_exit_codes_and_error_objects(capsys, graph_file, tmp_path, argv, status):
    path = graph_file(EDGE)
    argv = [a.format(path=path, missing=str(tmp_path / "none.txt")) for a in argv]
    got, out = run(capsys, *argv)
    assert got == status
    if status:
        assert out.count("\n") == 1 and set(json.loads(out)) == {"error"}


def test_domain_errors_surface_module_messages(capsys, graph_file):
    status, report = run_json(capsys, "strata", graph_file("v\nw\nx\nv -> w\nw -> x\n"), "-n", "1", "--set", "1")
    assert status == 1 and report == {"error": "vertex 'w' is both a source and a target"}
    status, report = run_json(capsys, "check", graph_file("v\nv -> v : g\n"))
    assert status == 1 and report["error"].startswith("line 2, column 1:")


def test_deterministic_output_via_subprocess(graph_file):
    path = graph_file("a\nb\nc\na -> b : x\nc -> b : y\na -> b : z\n")
    cmd = [sys.executable, "-m", "symdual", "sym", path, "-n", "3", "--dump-cells"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd + ["--threads", "4"], capture_output=True, check=True).stdout
    assert first == second and json.loads(first)["betti"] == [1, 1, 0, 0]
