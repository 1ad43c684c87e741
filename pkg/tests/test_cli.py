import csv
import json
import subprocess
import sys

import pytest

from cfree.cli import main
from cfree.graph import clique, cycle, parse_graph, path, serialize_graph, serialize_pointed, PointedGraph
from cfree.hypergraph import certify, parse_hypergraph

from shapes import bowtie, c4_k3_k4, c4_k4


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return _write


def test_embed(write, capsys):
    pat, host = write("p", serialize_graph(clique(3))), write("h", serialize_graph(clique(4)))
    assert main(["verify", "embed", "--pattern", pat, "--host", host]) == 0
    assert capsys.readouterr().out.strip() == "0=0 1=1 2=2"
    c4 = write("c4", serialize_graph(cycle(4)))
    assert main(["verify", "embed", "--pattern", c4, "--host", host, "--induced"]) == 1
    assert capsys.readouterr().out.strip() == "none"
    assert main(["verify", "embed", "--pattern", pat, "--host", host, "--anchor", "0=3"]) == 0
    assert capsys.readouterr().out.startswith("0=3")


@pytest.mark.parametrize("g,code", [(clique(4), 0), (cycle(4), 1), (bowtie(), 2)])
def test_classify_exit_codes(write, tmp_path, capsys, g, code):
    trace = tmp_path / "t.json"
    assert main(["classify", "--in", write("g", serialize_graph(g)), "--trace", str(trace)]) == code
    assert json.loads(trace.read_text())["outcome"] in capsys.readouterr().out


def test_classify_errors(write, capsys):
    assert main(["classify", "--in", write("bad", "n 2\ne 0 5\n")]) == 3
    assert "line 2" in capsys.readouterr().err
    assert main(["classify", "--in", write("disc", "n 2\n")]) == 3


def test_classify_dir(tmp_path, capsys):
    d = tmp_path / "corpus"
    d.mkdir()
    (d / "a_k4.txt").write_text(serialize_graph(clique(4)))
    (d / "b_c4k4.txt").write_text(serialize_graph(c4_k4()))
    summary = tmp_path / "s.csv"
    assert main(["classify", "--dir", str(d), "--summary", str(summary)]) == 0
    rows = list(csv.reader(summary.open()))
    assert rows[0] == ["file", "outcome", "rule", "note"]
    assert [r[1] for r in rows[1:]] == ["Exists", "NotExists"]


def test_prune(write, tmp_path, capsys):
    c = write("c", serialize_graph(bowtie()))
    s = write("s", serialize_pointed(PointedGraph(clique(3), 0)))
    rep = tmp_path / "r.json"
    assert main(["prune", "--constraint", c, "--sigma", s, "--report", str(rep)]) == 0
    assert parse_graph(capsys.readouterr().out) == parse_graph("n 1\n")
    assert len(json.loads(rep.read_text())["pruned_corners"]) == 2


def test_detach(write, capsys):
    c = write("c", serialize_graph(c4_k3_k4()))
    assert main(["detach", "--constraint", c, "--block", "2", "--trials", "5", "--seed", "1"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["hypothesis"] is True and out["stress"]["violations"] == 0
    assert len(out["stress"]["trial_seeds"]) == 5


def test_hypergraph(tmp_path, capsys):
    out = tmp_path / "h.txt"
    assert main(["hypergraph", "--k", "3", "--g", "4", "--edges", "20", "--out", str(out)]) == 0
    assert all(certify(parse_hypergraph(out.read_text()), 4).values())
    assert main(["hypergraph", "--k", "5", "--g", "7", "--edges", "5", "--mode", "formula"]) == 3


def test_witness(write, tmp_path, capsys):
    c = write("c", serialize_graph(c4_k4()))
    rep = tmp_path / "r.json"
    args = ["witness", "--constraint", c, "--edges", "4", "--eps", "0101", "--report", str(rep)]
    assert main(args + ["--check", "cfree"]) == 0
    g = parse_graph(capsys.readouterr().out)
    report = json.loads(rep.read_text())
    assert report["cfree"] is True and report["vertices"] == g.n
    assert main(args + ["--check", "distinguish"]) == 0
    assert json.loads(rep.read_text())["distinguisher"] == {"0": True, "2": True}
    assert main(args + ["--check", "rigidity", "--trials", "1"]) == 0
    assert main(["witness", "--constraint", write("b", serialize_graph(bowtie())), "--edges", "2"]) == 3
    assert main(["witness", "--constraint", c, "--edges", "4", "--eps", "01"]) == 3


def test_demo(write, capsys):
    assert main(["demo", "--constraint", write("c", serialize_graph(c4_k3_k4()))]) == 0
    assert json.loads(capsys.readouterr().out)["stage"] == "residual"
    assert main(["demo", "--constraint", write("b", serialize_graph(bowtie()))]) == 3


def test_module_entry_point(write):
    g = write("g", serialize_graph(path(3)))
    res = subprocess.run([sys.executable, "-m", "cfree", "classify", "--in", g], capture_output=True, text=True)
    assert res.returncode == 2 and res.stdout.startswith("Open")
