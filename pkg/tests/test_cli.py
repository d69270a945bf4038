import json
import re
import subprocess
import sys

import pytest

from hmforge.cli import main
from hmforge.serialize import graph_doc, graph_from_doc


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_types_depth(capsys):
    code, out, _ = run(capsys, "types", "depth", "t^5_2")
    assert code == 0 and out.strip() == "2"


def test_types_specker_json(capsys):
    code, out, _ = run(capsys, "types", "specker", "5", "2", "--json")
    assert code == 0
    assert "0001010111" in out
    json.loads(out)


def test_bad_type_is_config_error(capsys):
    code, _, err = run(capsys, "types", "depth", "0101x")
    assert code == 2 and err


def test_build_hm_golden(tmp_path, capsys):
    code, _, _ = run(capsys, "build-hm", "--m", "32", "--w", "16", "--n", "3", "--s", "1",
                     "--seed", "0", "--verify", "all", "--out-dir", str(tmp_path))
    assert code == 0
    for name in ("graph.json", "trace.json", "report.json"):
        assert (tmp_path / name).exists()
    report = json.loads((tmp_path / "report.json").read_text())
    assert report["ok"] is True
    graph = json.loads((tmp_path / "graph.json").read_text())
    assert len(graph["edges"]) == 3


def test_build_hm_deterministic(tmp_path, capsys):
    outs = []
    for d in ("a", "b"):
        assert run(capsys, "build-hm", "--seed", "2", "--out-dir", str(tmp_path / d))[0] == 0
        outs.append({p.name: p.read_bytes() for p in sorted((tmp_path / d).iterdir())})
    assert outs[0] == outs[1]


def test_n_above_width_exits_2(tmp_path, capsys):
    code, _, err = run(capsys, "build-hm", "--seed", "0", "--w", "4", "--n", "5", "--out-dir", str(tmp_path))
    assert code == 2 and err


def test_missing_seed_exits_2(tmp_path, capsys):
    code, _, err = run(capsys, "build-hm", "--out-dir", str(tmp_path))
    assert code == 2 and "seed" in err


def test_config_file_and_override(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# comment\nseed=1\nm=32\nw=16\n")
    code, _, _ = run(capsys, "build-hm", "--config", str(cfg), "--out-dir", str(tmp_path / "c"))
    assert code == 0
    code, _, _ = run(capsys, "build-hm", "--config", str(cfg), "--seed", "0", "--out-dir", str(tmp_path / "d"))
    assert code == 0
    a = json.loads((tmp_path / "c" / "graph.json").read_text())
    b = json.loads((tmp_path / "d" / "graph.json").read_text())
    assert len(a["edges"]) == 0 and len(b["edges"]) == 3
    cfg.write_text("seed=1\nbogus=3\n")
    assert run(capsys, "build-hm", "--config", str(cfg), "--out-dir", str(tmp_path))[0] == 2


def test_export_roundtrip_and_dot(tmp_path, capsys):
    assert run(capsys, "build-hm", "--seed", "0", "--out-dir", str(tmp_path))[0] == 0
    g = tmp_path / "graph.json"
    again = tmp_path / "again.json"
    assert run(capsys, "export", str(g), "--format", "json", "--out", str(again))[0] == 0
    assert again.read_bytes() == g.read_bytes()
    G, labels = graph_from_doc(json.loads(g.read_text()))
    assert graph_doc(G) == json.loads(g.read_text())
    dot = tmp_path / "g.dot"
    assert run(capsys, "export", str(g), "--format", "dot", "--out", str(dot))[0] == 0
    text = dot.read_text()
    assert text.startswith("graph G {") and text.rstrip().endswith("}")
    assert len(re.findall(r" -- ", text)) == 3


def test_dot_parses_with_pydot(tmp_path, capsys):
    pydot = pytest.importorskip("pydot")
    assert run(capsys, "build-hm", "--seed", "0", "--out-dir", str(tmp_path))[0] == 0
    assert run(capsys, "export", str(tmp_path / "graph.json"), "--out", str(tmp_path / "g.dot"))[0] == 0
    (parsed,) = pydot.graph_from_dot_file(str(tmp_path / "g.dot"))
    assert len(parsed.get_edges()) == 3


def test_empty_graph_export(tmp_path, capsys):
    g = tmp_path / "empty.json"
    g.write_text('{"vertices": [], "edges": []}\n')
    assert run(capsys, "export", str(g), "--format", "dot", "--out", str(tmp_path / "e.dot"))[0] == 0
    assert (tmp_path / "e.dot").read_text() == "graph G {\n}\n"
    assert run(capsys, "export", str(g), "--format", "json", "--out", str(tmp_path / "e.json"))[0] == 0
    assert json.loads((tmp_path / "e.json").read_text()) == {"vertices": [], "edges": []}


def test_verify_detects_a_triangle(tmp_path, capsys):
    g = tmp_path / "tri.json"
    g.write_text(json.dumps({"vertices": ["w", "w*2", "w*3"], "edges": [["w", "w*2"], ["w*2", "w*3"], ["w", "w*3"]]}))
    code, out, _ = run(capsys, "verify", str(g), "--json")
    assert code == 1
    json.loads(out)


def test_chromatic_specker(capsys):
    code, out, _ = run(capsys, "chromatic", "--specker", "3", "1", "9", "--json")
    assert code == 0 and json.loads(out)["chi"] == 3


def test_tree_and_growth_commands(tmp_path, capsys):
    assert run(capsys, "build-tree-hm", "--seed", "0", "--out-dir", str(tmp_path / "t"))[0] == 0
    assert run(capsys, "build-growth", "--seed", "0", "--m", "48", "--w", "32", "--f", "0:3,1:5,2:7",
               "--out-dir", str(tmp_path / "g"))[0] == 0
    assert run(capsys, "growth-report", "--seed", "0", "--m", "48", "--w", "32", "--f", "0:3,1:5,2:7",
               "--samples", "20", "--out-dir", str(tmp_path / "r"))[0] == 0
    rows = (tmp_path / "r" / "growth.csv").read_text().splitlines()
    assert rows[0].startswith("k,") and len(rows) == 4


def test_guess_commands(capsys):
    code, out, _ = run(capsys, "guess", "check", "--m", "8", "--w", "4", "--ladders", "canonical",
                       "--types", "01", "--json")
    assert code == 0 and json.loads(out)["witness"] is not None
    code, out, _ = run(capsys, "guess", "antibuild", "--m", "16", "--seed", "0", "--span", "16",
                       "--types", ",".join(f"t^{3 + k % 14}_1" for k in range(40)), "--json")
    assert code == 0 and json.loads(out)["witness"] is None and json.loads(out)["violations"] == []


def test_console_script_entry_point():
    res = subprocess.run([sys.executable, "-m", "hmforge.cli", "types", "depth", "t^5_2"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.strip() == "2"
