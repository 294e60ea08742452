from __future__ import annotations

import json

import pytest

from graphmatroids import __version__
from graphmatroids.cli import main
from graphmatroids.generators import complete, cycle
from graphmatroids.graph import graph_document, read_graph, write_graph


@pytest.fixture
def k4_file(tmp_path):
    path = tmp_path / "k4.json"
    path.write_bytes(write_graph(complete(4)))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_rank_prints_value_and_certificate(capsys, k4_file):
    code, out, _ = run(capsys, "rank", "--k", "2", "--l", "3", "--input", k4_file)
    assert code == 0
    doc = json.loads(out)
    assert doc["rank"] == 5
    assert doc["F"] == [] and doc["cover"] == [["0", "1", "2", "3"]]


def test_rank_on_an_edge_subset(capsys, k4_file):
    code, out, _ = run(capsys, "rank", "--k", "1", "--l", "1", "--input", k4_file, "--edges", "0,1")
    assert code == 0 and json.loads(out)["rank"] == 2


def test_rank_cofactor(capsys, k4_file):
    code, out, _ = run(capsys, "rank", "--cofactor", "--input", k4_file)
    assert code == 0 and json.loads(out)["rank"] == 6


def test_rank_union_multiplier(capsys, k4_file):
    code, out, _ = run(capsys, "rank", "--k", "1", "--l", "1", "--t", "2", "--input", k4_file)
    assert code == 0 and json.loads(out)["rank"] == 6


def test_check_and_components(capsys, tmp_path):
    path = tmp_path / "k7.json"
    path.write_bytes(write_graph(complete(7)))
    code, out, _ = run(capsys, "check", "--predicate", "redundant", "--k", "2", "--l", "3", "--input", str(path))
    assert code == 0 and json.loads(out)["value"] is True
    code, out, _ = run(capsys, "components", "--k", "2", "--l", "3", "--input", str(path))
    assert code == 0 and len(json.loads(out)["components"]) == 1


def test_vconn(capsys, k4_file):
    code, out, _ = run(capsys, "vconn", "--input", k4_file, "--k", "1", "--l", "1")
    assert code == 0 and json.loads(out)["vertical_connectivity"] == 3


def test_construct_writes_a_graph(capsys, tmp_path):
    out_path = tmp_path / "ly.json"
    code, _, _ = run(capsys, "construct", "--family", "lovasz_yemini", "--params", "k=2", "l=3", "--out", str(out_path))
    assert code == 0
    g = read_graph(out_path.read_bytes())
    assert (g.n, g.m) == (40, 100)


def test_construct_packing_lists_parts(capsys):
    code, out, _ = run(capsys, "construct", "--family", "cofactor_packing", "--params", "n=12", "t=2")
    assert code == 0 and [len(p) for p in json.loads(out)["parts"]] == [33, 33]


def test_reconstruct_roundtrip(capsys, tmp_path):
    g = complete(5)
    doc = {"elements": [str(e) for e in g.edge_ids], "family": {"count": {"k": 1, "l": 1}}, "graph": graph_document(g)}
    src = tmp_path / "m.json"
    src.write_text(json.dumps(doc))
    dst = tmp_path / "out.json"
    code, _, _ = run(capsys, "reconstruct", "--input", str(src), "--out", str(dst))
    assert code == 0
    assert read_graph(dst.read_bytes()).m == 10


def test_reconstruct_refusal_exits_one(capsys, tmp_path):
    g = cycle(6)
    doc = {"elements": [str(e) for e in g.edge_ids], "family": {"count": {"k": 1, "l": 0}}, "graph": graph_document(g)}
    src = tmp_path / "m.json"
    src.write_text(json.dumps(doc))
    code, _, err = run(capsys, "reconstruct", "--input", str(src))
    assert code == 1 and "reconstruction failed" in err


def test_verify_passes_and_writes_versioned_json(capsys, tmp_path):
    out = tmp_path / "r.json"
    code, _, err = run(capsys, "verify", "--suite", "complete-redundancy", "--json", str(out))
    assert code == 0 and "PASS" in err
    doc = json.loads(out.read_text())
    (rep,) = doc["reports"]
    assert rep["schema"] == 1 and rep["tool_version"] == __version__ and rep["violations"] == []


def test_verify_mutant_exits_one(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "complete-redundancy", "--mutant")
    assert code == 1
    assert json.loads(out)["reports"][0]["violations"]


def test_verify_reports_are_reproducible(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        assert run(capsys, "verify", "--suite", "union-identity", "--samples", "10", "--seed", "7", "--json", str(path))[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_verify_accepts_n_alias(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "kriesell-f1", "--n", "8", "--samples", "5")
    assert code == 0 and json.loads(out)["reports"][0]["cases"] == 5


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["verify"],
        ["verify", "--suite", "no-such-suite"],
        ["rank", "--input", "missing.json", "--k", "1", "--l", "1"],
        ["rank", "--input", "x.json"],
        ["check", "--predicate", "pretty", "--k", "1", "--l", "1", "--input", "x.json"],
        ["construct", "--family", "wheel", "--params", "n"],
        ["rank", "--k", "1", "--l", "5", "--input", "x.json"],
    ],
)
def test_usage_errors_exit_two(capsys, argv, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    (tmp_path / "x.json").write_bytes(write_graph(complete(3)))
    assert run(capsys, *argv)[0] == 2


def test_unknown_edge_id_is_a_usage_error(capsys, k4_file):
    assert run(capsys, "rank", "--k", "1", "--l", "1", "--input", k4_file, "--edges", "zz")[0] == 2
