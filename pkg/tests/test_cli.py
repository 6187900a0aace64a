"""Command-line interface and configuration."""

import json

import pytest

from flipgraph import cli, geometry, words
from flipgraph.config import load_config


def run(argv):
    return cli.main(argv)


def test_build_writes_json(tmp_path, capsys):
    out = tmp_path / "t.json"
    assert run(["build", "L^4R^6", "--json", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["tets"] == 10
    table = capsys.readouterr().out
    assert "B(312)" in table


def test_build_rejects_single_letter(capsys):
    assert run(["build", "LLLL"]) == 2
    assert "SingleLetterWord" in capsys.readouterr().err


def test_solve_file_matches_in_process(tmp_path, capsys):
    tfile = tmp_path / "t.json"
    run(["build", "R^2L^2", "--json", str(tfile)])
    capsys.readouterr()
    sfile = tmp_path / "sol.json"
    assert run(["solve", str(tfile), "--json", str(sfile)]) == 0
    report = json.loads(sfile.read_text())
    t = words.build("R^2L^2")
    sol = geometry.solve_complete_structure(t)
    assert report["classification"] == "Geometric"
    # bit-for-bit round trip: the JSON floats are exactly the solver output
    assert report["shapes"] == [[z.real, z.imag] for z in sol.shapes]
    assert report["volume"] == geometry.volume(sol)


def test_isolated_command(tmp_path, capsys):
    out = tmp_path / "rep.json"
    assert run(["isolated", "R^2L^2", "--json", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["is_isolated"] is True
    assert "is_isolated=true" in capsys.readouterr().err


def test_isosig_commands(tmp_path, capsys):
    assert run(["isosig", "decode", "cPcbbbiht"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["tets"] == 2
    tfile = tmp_path / "t.json"
    run(["build", "RL", "--json", str(tfile)])
    capsys.readouterr()
    assert run(["isosig", "encode", str(tfile)]) == 0
    assert capsys.readouterr().out.strip() == "cPcbbbiht"


def test_cusp_svg_and_report(tmp_path, capsys):
    svg = tmp_path / "c.svg"
    rep = tmp_path / "c.json"
    assert run(["cusp", "RL", "--svg", str(svg), "--report",
                "--json", str(rep)]) == 0
    assert svg.read_text().startswith("<svg")
    data = json.loads(rep.read_text())
    assert data["triangles"] == 8
    assert all(isinstance(r["flip_geometric"], bool) for r in data["edges"])


def test_moves_command(tmp_path):
    out = tmp_path / "m.json"
    assert run(["moves", "R^2L^2", "--json", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["classification"] == "Geometric"
    assert all(r["class"] == "Flat" for r in data["sites"])


def test_explore_dot(tmp_path):
    dot = tmp_path / "g.dot"
    out = tmp_path / "g.json"
    assert run(["explore", "R^2L^2", "--depth", "1", "--filter", "geometric",
                "--dot", str(dot), "--json", str(out)]) == 0
    assert "graph flips {" in dot.read_text()
    data = json.loads(out.read_text())
    assert len(data["nodes"]) == 1


def test_regeometrize_command(tmp_path):
    out = tmp_path / "r.json"
    assert run(["regeometrize", "L^4R^4", "--json", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["final_size"] == 9


def test_config_file_and_overrides(tmp_path, monkeypatch):
    cfgfile = tmp_path / "cfg.json"
    cfgfile.write_text(json.dumps({"max_iter": 33, "eps_res": 1e-9}))
    monkeypatch.setenv("FLIPGRAPH_CONFIG", str(cfgfile))
    cfg = load_config()
    assert cfg.max_iter == 33 and cfg.eps_res == 1e-9
    monkeypatch.delenv("FLIPGRAPH_CONFIG")
    assert load_config().max_iter == 50


def test_config_rejects_bad_values(tmp_path):
    cfgfile = tmp_path / "cfg.json"
    cfgfile.write_text(json.dumps({"eps_res": -1}))
    with pytest.raises(ValueError):
        load_config(str(cfgfile))
    cfgfile.write_text(json.dumps({"bogus": 1}))
    with pytest.raises(ValueError):
        load_config(str(cfgfile))


def test_reproduce_paper_small(tmp_path, capsys):
    out = tmp_path / "report.jsonl"
    assert run(["reproduce-paper", "--n-max", "1", "--m-max", "1",
                "--out", str(out)]) == 0
    rows = [json.loads(line) for line in out.read_text().splitlines()]
    assert all(r["ok"] for r in rows)
    kinds = {r["row"] for r in rows}
    assert kinds == {"isolation", "odd-exponent", "lemma-4.1", "hoffman",
                     "hoffman-distinct", "table-1"}
