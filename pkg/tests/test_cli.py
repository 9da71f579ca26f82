from __future__ import annotations

import json

import pytest

from fixtures import ex10_graph, ex10_pd
from pwcross.cli import main
from pwcross.graph import Graph


@pytest.fixture
def ex10_files(tmp_path):
    g = tmp_path / "g.json"
    pd = tmp_path / "pd.json"
    g.write_text(json.dumps(ex10_graph().to_json()))
    pd.write_text(json.dumps(ex10_pd().to_json()))
    return tmp_path, str(g), str(pd)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_cr_exact_and_verify_roundtrip(capsys, ex10_files):
    tmp, g, pd = ex10_files
    draw, svg = str(tmp / "d.json"), str(tmp / "d.svg")
    code, out, _ = run(capsys, "cr-exact", g, pd, "--draw", draw, "--svg", svg)
    assert code == 0 and out.strip() == "5"
    assert (tmp / "d.svg").read_text().count("<rect") == 5
    code, out, _ = run(capsys, "verify", g, draw, "--anchors", pd, "--grid", "280,290")
    rep = json.loads(out)
    assert code == 0 and rep["total"] == 5 and rep["violations"] == [] and rep["anchors_uncrossed"]


def test_verify_claim_mismatch_is_bound_violation(capsys, ex10_files):
    tmp, g, pd = ex10_files
    draw = tmp / "d.json"
    run(capsys, "cr-exact", g, pd, "--draw", str(draw))
    d = json.loads(draw.read_text())
    d["claimed_crossings"] = 4
    draw.write_text(json.dumps(d))
    code, _, err = run(capsys, "verify", g, str(draw))
    assert code == 3 and json.loads(err)["exit_code"] == 3


def test_gadget(capsys):
    code, out, _ = run(capsys, "gadget", "1,1,2")
    d = json.loads(out)
    assert code == 0 and d["verdict"]["yes"] and d["wcr"] == 1 and d["verdict"]["threshold"] == 1


def test_gen_deterministic_and_pipelines(capsys, tmp_path):
    outs = [run(capsys, "gen", "--maximal", "--width", "3", "--n", "15", "--seed", "4")[1] for _ in range(2)]
    assert outs[0] == outs[1]
    inst = tmp_path / "inst.json"
    inst.write_text(outs[0])
    code, out, _ = run(capsys, "approx3", str(inst), str(inst))
    cert = json.loads(out)["certificate"]
    assert code == 0 and cert["within_bound"]
    code, out, _ = run(capsys, "cr-exact", str(inst), str(inst))
    assert code == 0 and int(out) == cert["crossings"]


def test_draw_pww(capsys, tmp_path):
    inst = tmp_path / "inst.json"
    inst.write_text(run(capsys, "gen", "--maximal", "--width", "4", "--n", "12", "--seed", "1")[1])
    code, out, _ = run(capsys, "draw-pww", str(inst), str(inst))
    d = json.loads(out)
    assert code == 0 and d["crossings"] == d["bounds"]["counted"] <= d["bounds"]["upper"]


def test_small_commands(capsys, ex10_files):
    _, g, pd = ex10_files
    code, out, _ = run(capsys, "pathwidth", g)
    assert code == 0 and json.loads(out)["width"] == 3
    code, out, _ = run(capsys, "alternating", g, pd, "--prefer", "1,2")
    assert code == 0 and len(json.loads(out)["bags"]) == 13
    code, out, _ = run(capsys, "clusters", g, pd)
    assert code == 0 and [c["size"] for c in json.loads(out)["clusters"]] == [8, 6]


def test_oracle(capsys, tmp_path):
    k5 = tmp_path / "k5.json"
    k5.write_text(json.dumps(Graph.complete(5).to_json()))
    code, out, _ = run(capsys, "oracle", str(k5), "--grid-side", "5")
    assert code == 0 and json.loads(out)["value"] == 1


def test_errors(capsys, tmp_path, ex10_files):
    _, g, _ = ex10_files
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"n": 3, "edges": [[0, 5]]}))
    code, _, err = run(capsys, "pathwidth", str(bad))
    assert code == 2 and json.loads(err)["error"]
    big = tmp_path / "big.json"
    big.write_text(json.dumps(Graph.from_edges(30, [(i, i + 1) for i in range(29)]).to_json()))
    code, _, err = run(capsys, "pathwidth", str(big))
    assert code == 4 and json.loads(err)["error"] == "TooLarge"
    code, _, _ = run(capsys, "cr-exact", g, str(bad))
    assert code == 2
