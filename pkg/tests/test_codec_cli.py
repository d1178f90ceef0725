import json
import math
import subprocess
import sys
from pathlib import Path

import pytest

from topocode import codec
from topocode.cli import main
from topocode.graph_core import complete, cycle
from topocode.hypergraph import validate

FIX = Path(__file__).parent / "fixtures"
FIXTURES = sorted(FIX.glob("*.json"))


def cli(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def cli_json(capsys, *argv):
    code, out, err = cli(capsys, *argv)
    return code, json.loads(out) if out.strip() else None


def write(tmp_path, name, doc):
    p = tmp_path / name
    codec.save(p, doc)
    return p


# codec

def reserialise(path):
    doc = json.loads(path.read_text())
    name = path.name
    if name.endswith(".hyper.json"):
        return codec.dumps(codec.hypergraph_to_json(codec.load(path, "hypergraph")))
    if name.endswith(".topcode.json"):
        return codec.dumps(codec.topcode_to_json(codec.load(path, "topcode")))
    g, lab, col = codec.load(path, "graph")
    return codec.dumps(codec.graph_to_json(g, lab, col, doc.get("edge_order")))


@pytest.mark.parametrize("path", FIXTURES, ids=lambda p: p.name)
def test_fixture_round_trip_bytes(path):
    assert reserialise(path) == path.read_text()


def test_save_then_load_identity(tmp_path):
    h = validate(range(1, 6), [{1, 2}, {2, 3, 4}, {4, 5}])
    p = write(tmp_path, "h.hyper.json", codec.hypergraph_to_json(h))
    assert codec.load(p, "hypergraph") == h
    assert codec.hypergraph_doc_is_canonical(json.loads(p.read_text()))


def test_eq12_fixture():
    h = codec.load(FIX / "eq12.hyper.json", "hypergraph")
    assert h.size == 13 and h.ground == tuple(range(1, 13))


def test_duplicate_hyperedge_named(tmp_path):
    p = write(tmp_path, "d.json", {"ground": [1, 2, 3], "edges": [[1, 2], [2, 3], [2, 1]]})
    with pytest.raises(codec.CodecError) as exc:
        codec.load(p, "hypergraph")
    assert "duplicate" in str(exc.value) and "[1, 2]" in str(exc.value).replace("(1, 2)", "[1, 2]")
    assert exc.value.where.endswith(".edges")


@pytest.mark.parametrize("doc, where", [
    ({"p": 2, "edges": [[0, 2]]}, "edges[0]"),
    ({"p": 2, "edges": [[0, 1], [1, 0]]}, "edges"),
    ({"edges": []}, ".p"),
    ({"p": 2, "edges": [[0, "1"]]}, "edges[0]"),
    ({"p": 2, "edges": [[0, 1]], "vertex_labels": [0]}, "vertex_labels"),
    ({"p": 2, "edges": [[0, 1]], "vertex_sets": [[1], [1]], "edge_sets": [[0, 2, [1]]]}, "edge_sets[0]"),
])
def test_graph_diagnostics(tmp_path, doc, where):
    p = write(tmp_path, "g.json", doc)
    with pytest.raises(codec.CodecError) as exc:
        codec.load(p, "graph")
    assert where in exc.value.where


def test_bad_json_has_line(tmp_path):
    p = tmp_path / "x.json"
    p.write_text('{\n  "p": 2,\n  "edges": [\n}')
    with pytest.raises(codec.CodecError) as exc:
        codec.load(p, "graph")
    assert ":4:" in exc.value.where


def test_unknown_kind():
    with pytest.raises(codec.CodecError):
        codec.load(FIX / "p5.graph.json", "sheaf")


# CLI: usage and exit codes

def test_unknown_flag(capsys):
    code, _, err = cli(capsys, "hyper", "reduce", "--in", FIX / "fig4.hyper.json", "--bogus")
    assert code == 2 and "--bogus" in err


def test_abbreviated_flag_rejected(capsys):
    assert cli(capsys, "topcode", "strings", "--in", FIX / "eq3.topcode.json", "--cou", "2")[0] == 2


def test_missing_file(capsys, tmp_path):
    code, _, err = cli(capsys, "hyper", "reduce", "--in", tmp_path / "nope.json")
    assert code == 2 and "nope.json" in err


def test_help_is_success(capsys):
    assert cli(capsys, "--help")[0] == 0


def test_bad_seed_env(capsys, monkeypatch):
    monkeypatch.setenv("TOPCODE_SEED", "abc")
    code, _, err = cli(capsys, "simulate", "run", "--steps", "2")
    assert code == 2 and "TOPCODE_SEED" in err


def test_seed_env_default(capsys, monkeypatch):
    monkeypatch.setenv("TOPCODE_SEED", "7")
    _, a = cli_json(capsys, "topcode", "strings", "--in", FIX / "eq3.topcode.json", "--count", "4")
    _, b = cli_json(capsys, "topcode", "strings", "--in", FIX / "eq3.topcode.json", "--count", "4", "--seed", "7")
    assert a == b


def test_console_script():
    r = subprocess.run([sys.executable, "-m", "topocode.cli", "hyper", "uniform", "--in",
                        str(FIX / "fig4.hyper.json")], capture_output=True, text=True)
    assert r.returncode == 0 and json.loads(r.stdout)["uniformity"] == 8


# verify

def test_verify_labeling_text_lists_conditions(capsys):
    code, out, _ = cli(capsys, "verify", "labeling", "--in", FIX / "p5.graph.json", "--kind", "graceful",
                       "--format", "text")
    assert code == 0
    assert "conditions.B-1: pass" in out and "conditions.B-4: pass" in out


def test_verify_labeling_false(capsys):
    code, doc = cli_json(capsys, "verify", "labeling", "--in", FIX / "p5.graph.json", "--kind", "odd-graceful")
    assert code == 1 and doc["conditions"]["B-5"] is False


def test_verify_labeling_needs_kind(capsys):
    assert cli(capsys, "verify", "labeling", "--in", FIX / "p5.graph.json")[0] == 2


def test_verify_labeling_eq3(capsys):
    code, doc = cli_json(capsys, "verify", "labeling", "--in", FIX / "eq3.graph.json", "--kind", "graceful")
    assert code == 0 and doc["ok"]


def test_verify_class_eq11(capsys):
    code, doc = cli_json(capsys, "verify", "class", "--in", FIX / "eq11.graph.json", "--flags", "a")
    assert code == 0 and doc["ok"]


def test_verify_intersected(capsys):
    code, doc = cli_json(capsys, "verify", "intersected", "--in", FIX / "eq11.graph.json")
    assert code == 0 and doc["verdict"] == "intersected-graph"


def test_verify_intersected_false(capsys, tmp_path):
    p = write(tmp_path, "g.json", {"p": 2, "edges": [[0, 1]], "vertex_sets": [[1], [2]]})
    code, doc = cli_json(capsys, "verify", "intersected", "--in", p)
    assert code == 1 and doc["c0_failures"] == [[0, 1]]


def test_verify_chyper(capsys):
    code, doc = cli_json(capsys, "verify", "chyper", "--in", FIX / "eq11.graph.json", "--cgraph", "1")
    assert code == 0 and doc["conditions"] == {"chyper-1": True}


def test_verify_sets_needed(capsys):
    assert cli(capsys, "verify", "class", "--in", FIX / "p5.graph.json")[0] == 2


# hyper

def test_hyper_intersected_fig4(capsys):
    code, doc = cli_json(capsys, "hyper", "intersected", "--in", FIX / "fig4.hyper.json")
    g, _, sc = codec.graph_from_json(doc)
    assert code == 0 and g == complete(4)
    assert all(len(s) == 4 for s in sc.edge.values())


def test_hyper_dual_fig4(capsys):
    _, doc = cli_json(capsys, "hyper", "dual", "--in", FIX / "fig4.hyper.json")
    assert len(doc["edges"]) == 15 and doc["ground"] == [0, 1, 2, 3]


def test_hyper_reduce_eq17(capsys):
    _, doc = cli_json(capsys, "hyper", "reduce", "--in", FIX / "eq17.hyper.json")
    assert doc["empty"] and doc["reduced"] == []


def test_hyper_uniform_and_adjacent(capsys):
    assert cli_json(capsys, "hyper", "uniform", "--in", FIX / "fig4.hyper.json")[1]["uniformity"] == 8
    _, doc = cli_json(capsys, "hyper", "adjacent", "--in", FIX / "fig4.hyper.json")
    assert {len(e) for e in doc["edges"]} == {7}
    assert [3, 4, 5, 8, 10, 13, 14] in doc["edges"]


def test_hyper_ears_matching_connectivity(capsys):
    _, ears = cli_json(capsys, "hyper", "ears", "--in", FIX / "eq13.hyper.json")
    assert isinstance(ears["ears"], list)
    _, m = cli_json(capsys, "hyper", "matching", "--in", FIX / "eq13.hyper.json")
    assert m["count"] >= 1 and any(len(x) == 6 for x in m["matchings"])
    _, c = cli_json(capsys, "hyper", "connectivity", "--in", FIX / "fig4.hyper.json")
    assert c["value"] == 3


def test_hyper_hamilton(capsys):
    code, doc = cli_json(capsys, "hyper", "hamilton", "--in", FIX / "eq12.hyper.json")
    assert code == 0 and len(doc["cycle"]) == 13


def test_hyper_chromatic(capsys):
    code, doc = cli_json(capsys, "hyper", "chromatic", "--in", FIX / "fig4.hyper.json")
    assert code == 0 and doc["value"] == 4
    assert cli_json(capsys, "hyper", "chromatic", "--in", FIX / "fig4.hyper.json", "--kind", "hypervertex")[0] == 0


def test_hyper_cap_exit(capsys):
    code, _, err = cli(capsys, "hyper", "chromatic", "--in", FIX / "eq12.hyper.json")
    assert code == 3 and "cap" in err


def test_hyper_duplicate_exit(capsys, tmp_path):
    p = write(tmp_path, "d.json", {"ground": [1, 2], "edges": [[1, 2], [1, 2]]})
    code, _, err = cli(capsys, "hyper", "reduce", "--in", p)
    assert code == 2 and "duplicate" in err


# setcolor

def test_setcolor_vset(capsys):
    code, doc = cli_json(capsys, "setcolor", "vset", "--in", FIX / "p5.graph.json")
    assert code == 0 and doc["c0"] and len(doc["graph"]["vertex_sets"]) == 5


def test_setcolor_vset_needs_tree(capsys, tmp_path):
    p = write(tmp_path, "c.json", codec.graph_to_json(cycle(4)))
    assert cli(capsys, "setcolor", "vset", "--in", p)[0] == 2


@pytest.mark.parametrize("variant", ["1", "2"])
def test_setcolor_pscs_tree(capsys, variant):
    code, doc = cli_json(capsys, "setcolor", "pscs", "--in", FIX / "p5.graph.json", "--variant", variant)
    assert code == 0 and doc["c0"] and doc["tree"] is None


def test_setcolor_pscs_cycle(capsys, tmp_path):
    # graceful C4: edge differences 4, 3, 1, 2
    p = write(tmp_path, "c4.json", codec.graph_to_json(cycle(4)) | {"vertex_labels": [0, 4, 1, 2]})
    code, doc = cli_json(capsys, "setcolor", "pscs", "--in", p, "--variant", "3")
    assert code == 0 and doc["c0"]
    assert doc["tree"]["p"] == len(doc["origin"]) and len(doc["tree"]["edges"]) == 4
    assert cli(capsys, "setcolor", "pscs", "--in", FIX / "p5.graph.json", "--variant", "3")[0] == 2


def test_setcolor_construct_and_adjacent(capsys):
    code, doc = cli_json(capsys, "setcolor", "construct-tree", "--in", FIX / "p5.graph.json")
    assert code == 0 and doc["ok"]
    code, doc = cli_json(capsys, "setcolor", "adjacent-edge", "--in", FIX / "p5.graph.json",
                         "--strategy", "longest-path")
    assert code == 0 and doc["ok"]


# topcode

def test_topcode_build_matches_fixture(capsys):
    code, out, _ = cli(capsys, "topcode", "build", "--in", FIX / "eq3.graph.json")
    assert code == 0 and out == (FIX / "eq3.topcode.json").read_text()


def test_topcode_strings_reproducible(capsys):
    argv = ("topcode", "strings", "--in", FIX / "eq3.topcode.json", "--count", "4", "--seed", "7")
    _, a = cli_json(capsys, *argv)
    _, b = cli_json(capsys, *argv)
    assert a == b and len(a["strings"]) == 4
    assert all(len(s) == 27 for s in a["strings"])


def test_topcode_canonical_string(capsys):
    _, doc = cli_json(capsys, "topcode", "strings", "--in", FIX / "eq3.topcode.json")
    rows = json.loads((FIX / "eq3.topcode.json").read_text())["rows"]
    assert doc["strings"] == ["".join(f"{x}{e}{y}" for x, e, y in zip(*rows))]


def test_topcode_count(capsys):
    _, doc = cli_json(capsys, "topcode", "count", "--in", FIX / "eq3.topcode.json")
    assert doc["count"] == str(math.factorial(27))


def test_topcode_set_eq11(capsys):
    code, doc = cli_json(capsys, "topcode", "set", "--in", FIX / "eq11.graph.json")
    assert code == 0 and doc["kind"] == "set"
    _, cnt = cli_json(capsys, "topcode", "count", "--in", FIX / "eq11.graph.json")
    f = math.factorial
    assert int(cnt["entry_orderings"]) == f(3) ** 6 * f(2) ** 6 * f(3) ** 6
    _, rows = cli_json(capsys, "topcode", "strings", "--in", FIX / "eq11.graph.json", "--seed", "1")
    assert len(rows["rows"]) == 3


def test_topcode_wrong_flavour(capsys):
    assert cli(capsys, "topcode", "set", "--in", FIX / "eq3.graph.json")[0] == 2
    assert cli(capsys, "topcode", "build", "--in", FIX / "eq11.graph.json")[0] == 2


# group

def test_group_paths(capsys, tmp_path):
    code, out, _ = cli(capsys, "group", "build", "--in", FIX / "p5.graph.json", "--modulus", "4")
    assert code == 0
    p = tmp_path / "grp.json"
    p.write_text(out)
    assert cli_json(capsys, "group", "add", "--in", p, "--i", "2", "--j", "4", "--zero", "1")[1] == {"index": 1}
    assert cli_json(capsys, "group", "inverse", "--in", p, "--i", "3", "--zero", "2")[1] == {"index": 1}
    code, doc = cli_json(capsys, "group", "check", "--in", p)
    assert code == 0 and all(doc["conditions"].values())


def test_group_check_text(capsys, tmp_path):
    _, out, _ = cli(capsys, "group", "build", "--in", FIX / "p5.graph.json")
    p = tmp_path / "grp.json"
    p.write_text(out)
    code, text, _ = cli(capsys, "group", "check", "--in", p, "--format", "text")
    assert code == 0 and "conditions.closure: pass" in text


def test_group_usage(capsys, tmp_path):
    _, out, _ = cli(capsys, "group", "build", "--in", FIX / "p5.graph.json")
    p = tmp_path / "grp.json"
    p.write_text(out)
    assert cli(capsys, "group", "add", "--in", p, "--i", "1", "--zero", "1")[0] == 2
    assert cli(capsys, "group", "add", "--in", p, "--i", "9", "--j", "1", "--zero", "1")[0] == 2
    assert cli(capsys, "group", "build", "--in", FIX / "p5.graph.json", "--flavor", "set-colored")[0] == 2


def test_group_set_colored(capsys):
    code, doc = cli_json(capsys, "group", "build", "--in", FIX / "eq11.graph.json", "--flavor", "set-colored")
    assert code == 0 and doc["flavor"] == "set-colored"


# lattice

def test_lattice_apply(capsys, tmp_path):
    c4 = write(tmp_path, "c4.json", codec.graph_to_json(cycle(4)))
    code, doc = cli_json(capsys, "lattice", "apply", "--in", c4, "--other", c4, "--op", "O1",
                         "--sites", "[[0,[1]],[0,[1]]]")
    assert code == 0 and (doc["p"], len(doc["edges"])) == (10, 10)
    assert cli(capsys, "lattice", "apply", "--in", c4, "--other", c4, "--op", "O2",
               "--sites", "[[0,[1,3]],[0,[1]]]")[0] == 2


def test_lattice_sample_and_replay(capsys, tmp_path):
    base = write(tmp_path, "base.json", {"kind": "edge-hamiltonian",
                                         "graphs": [codec.graph_to_json(cycle(4)), codec.graph_to_json(complete(4))]})
    _, a = cli_json(capsys, "lattice", "sample", "--in", base, "--counts", "1,1", "--seed", "3")
    word = write(tmp_path, "word.json", a["word"])
    _, b = cli_json(capsys, "lattice", "sample", "--in", base, "--word", word)
    assert a["graph"] == b["graph"] and a["trace"] == b["trace"]
    assert cli(capsys, "lattice", "sample", "--in", base)[0] == 2


def test_lattice_sample_cap(capsys, tmp_path):
    base = write(tmp_path, "base.json", {"graphs": [codec.graph_to_json(complete(5))]})
    assert cli(capsys, "lattice", "sample", "--in", base, "--counts", "13")[0] == 3


def test_lattice_enumerate01(capsys, tmp_path):
    hs = [codec.hypergraph_to_json(validate(range(3), [{0, 1}, {1, 2}])),
          codec.hypergraph_to_json(validate(range(4), [{0, 1}, {1, 2, 3}]))]
    p = write(tmp_path, "hs.json", {"hypergraphs": hs})
    code, doc = cli_json(capsys, "lattice", "enumerate01", "--in", p)
    assert code == 0 and doc["count"] == 4
    assert doc["elements"][0] == {"vector": [0, 0], "element": None}


# simulate

def test_simulate_csv_header(capsys):
    code, out, _ = cli(capsys, "simulate", "run", "--steps", "5", "--seed", "1")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "t,v_net,e_net" and len(lines) == 7


def test_simulate_table_csv(capsys):
    _, out, _ = cli(capsys, "simulate", "run", "--steps", "50", "--table", "cum")
    assert out.splitlines()[0] == "k,value"


def test_simulate_json_stable(capsys):
    a = cli(capsys, "simulate", "run", "--steps", "20", "--seed", "4", "--format", "json")[1]
    b = cli(capsys, "simulate", "run", "--steps", "20", "--seed", "4", "--format", "json")[1]
    assert a == b and json.loads(a)["e_net"] == 3 + 40


def test_simulate_fit_and_kinematics(capsys, tmp_path):
    hist = tmp_path / "h.csv"
    assert cli(capsys, "simulate", "run", "--steps", "200", "--out", hist)[0] == 0
    code, fit = cli_json(capsys, "simulate", "fit", "--in", hist, "--format", "json")
    assert code == 0 and math.isclose(fit["a_v"], 1) and math.isclose(fit["a_e"], 2)
    code, kin = cli_json(capsys, "simulate", "kinematics", "--in", hist, "--format", "json")
    assert code == 0 and kin["speed_ratio"] == 2 and kin["velocity"] == math.sqrt(5)
    code, text, _ = cli(capsys, "simulate", "kinematics", "--in", hist, "--format", "text")
    assert "speed_ratio: 2.0" in text


def test_simulate_bad_history(capsys, tmp_path):
    bad = tmp_path / "h.csv"
    bad.write_text("t,v,e\n0,3,3\n")
    code, _, err = cli(capsys, "simulate", "fit", "--in", bad)
    assert code == 2 and "header" in err
    assert cli(capsys, "simulate", "fit")[0] == 2
