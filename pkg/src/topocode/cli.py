"""Command line front end.

Exit codes: 0 success or verdict true, 1 verdict false, 2 usage or I/O
error, 3 a search cap was exceeded.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from typing import Dict, List, Optional

from . import codec
from .errors import CapExceeded, TopocodeError

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class Usage(TopocodeError):
    pass


def _default_seed() -> int:
    raw = os.environ.get("TOPCODE_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise Usage(f"TOPCODE_SEED={raw!r} is not an integer") from None


def _ints(text: str) -> List[int]:
    return [int(x) for x in text.split(",") if x.strip()]


# output

def emit(doc, fmt: str, out, verdict: Optional[bool] = None) -> int:
    if fmt == "json":
        out.write(codec.dumps(doc))
    elif fmt == "csv":
        out.write(_as_csv(doc))
    else:
        out.write(_as_text(doc))
    if verdict is None:
        return EXIT_OK
    return EXIT_OK if verdict else EXIT_FALSE


def _as_text(doc, indent: str = "") -> str:
    if not isinstance(doc, dict):
        return f"{indent}{json.dumps(doc)}\n"
    lines = []
    for k in sorted(doc):
        v = doc[k]
        if isinstance(v, dict) and v and all(isinstance(x, bool) for x in v.values()):
            for name in sorted(v):
                lines.append(f"{indent}{k}.{name}: {'pass' if v[name] else 'FAIL'}\n")
        elif isinstance(v, dict):
            lines.append(f"{indent}{k}:\n" + _as_text(v, indent + "  "))
        else:
            lines.append(f"{indent}{k}: {json.dumps(v)}\n")
    return "".join(lines)


def _as_csv(doc) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if isinstance(doc, dict) and "header" in doc and "rows" in doc:
        w.writerow(doc["header"])
        w.writerows(doc["rows"])
        return buf.getvalue()
    if isinstance(doc, dict):
        w.writerow(["key", "value"])
        for k in sorted(doc):
            w.writerow([k, json.dumps(doc[k], sort_keys=True)])
        return buf.getvalue()
    raise Usage("this result has no CSV form")


def _load_graph(path):
    return codec.graph_from_json(codec.read_json(path), str(path))


def _load_hyper(path):
    return codec.hypergraph_from_json(codec.read_json(path), str(path))


def _constraints(args, sc=None):
    from .setcolor import parse_constraint
    texts = list(args.constraint or [])
    if not texts and sc is not None:
        texts = [codec.constraint_text(c) for c in sc.constraints]
    return tuple(parse_constraint(t) for t in texts)


def _need_coloring(g, col, path):
    if col is None:
        raise Usage(f"{path}: document has no vertex_sets")
    # documents may omit edge sets; they default to F(u) & F(v)
    return col if col.edge is not None else col.with_intersection_edges(g)


# verify

def cmd_verify(args) -> Dict:
    g, lab, col = _load_graph(args.input)
    if args.what == "labeling":
        from .labelings import LabelingKind, verify_labeling
        if lab is None:
            raise Usage(f"{args.input}: document has no vertex_labels")
        matching = None
        if args.matching:
            m = _ints(args.matching)
            matching = tuple(zip(m[::2], m[1::2]))
        kind = LabelingKind(args.kind, args.c, args.eta, matching,
                            tuple(_ints(args.part_x)) if args.part_x else None)
        rep = verify_labeling(g, lab, kind)
        return {"ok": rep.ok, "kind": args.kind, "conditions": rep.conditions,
                "edge_colors": [[a, b, c] for (a, b), c in sorted(rep.edge_colors.items())],
                "violations": rep.violations}
    col = _need_coloring(g, col, args.input)
    if args.what == "class":
        from .setcolor import verify_class
        flags = [f for f in (args.flags or "").split(",") if f]
        rep = verify_class(g, col, flags, _constraints(args, col), args.alpha, args.beta, args.k)
        return {"ok": rep.ok, "conditions": rep.conditions, "classes": rep.classes,
                "uniformity": rep.uniformity, "problems": rep.problems}
    if args.what == "intersected":
        from .setcolor import C0, verify_intersected
        rep = verify_intersected(g, col, _constraints(args, col) or (C0,))
        return {"ok": rep.ok, "verdict": rep.verdict, "c0_failures": [list(e) for e in rep.c0_failures],
                "missing_edges": [list(e) for e in rep.missing_edges],
                "constraint_failures": _plain(rep.constraint_failures)}
    from .setcolor import CGRAPH_NAMES, verify_chyper
    rep = verify_chyper(g, col, args.cgraph, args.r)
    return {"ok": rep.ok, "cgraph": args.cgraph, "name": CGRAPH_NAMES[args.cgraph],
            "conditions": rep.conditions, "preamble": rep.preamble}


def _plain(x):
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = sorted(x) if isinstance(x, (set, frozenset)) else x
        return [_plain(v) for v in items]
    return x


# hyper

def cmd_hyper(args) -> Dict:
    from . import hypergraph as hg
    h = _load_hyper(args.input)
    a = args.action
    if a == "reduce":
        red = hg.graham_reduction(h)
        return {"reduced": [list(e) for e in red], "empty": not red,
                "isolated": hg.isolated_vertices(h), "irreducible": hg.is_irreducible(h)}
    if a == "dual":
        return codec.hypergraph_to_json(hg.dual(h))
    if a == "uniform":
        return {"uniformity": hg.uniformity(h), "size": h.size, "order": h.order}
    if a == "ears":
        rep = hg.structure_report(h)
        return {"ears": [list(e) for e in rep.ears], "isolated": rep.isolated,
                "irreducible": rep.irreducible, "hyperdiameter": rep.hyperdiameter}
    if a == "matching":
        ms = hg.perfect_hypermatchings(h)
        return {"count": len(ms), "matchings": [[list(e) for e in m] for m in ms]}
    if a == "connectivity":
        rep = hg.hyperedge_connectivity(h)
        return {"value": rep.value, "cut": [list(e) for e in rep.cut]}
    if a == "intersected":
        g, sc = hg.intersected_graph(h)
        return codec.graph_to_json(g, coloring=sc)
    if a == "chromatic":
        return {"kind": args.kind, "value": hg.chromatic(h, args.kind)}
    if a == "adjacent":
        return codec.hypergraph_to_json(hg.adjacent_hypergraph(h))
    if a == "hamilton":
        cyc = hg.hyperedge_hamilton_cycle(h)
        return {"ok": cyc is not None, "cycle": [list(e) for e in cyc] if cyc else None}
    raise Usage(f"unknown hyper action {a}")


# setcolor

def cmd_setcolor(args) -> Dict:
    from . import setcolor as st
    from .labelings import any_graceful
    g, lab, _ = _load_graph(args.input)
    a = args.action
    if a == "vset":
        if not g.is_tree():
            raise Usage("vset needs a tree")
        f = lab if lab is not None else any_graceful(g)
        sc = st.vset_coloring(g, f)
        rep = st.verify_intersected(g, sc)
        return {"graph": codec.graph_to_json(g, coloring=sc), "c0": not rep.c0_failures}
    if a == "pscs":
        if args.variant == 4:
            raise Usage("variant 4 needs a base list; use the library call")
        if lab is None:
            raise Usage(f"{args.input}: pscs needs vertex_labels")
        res = st.pscs(g, args.variant, args.rounds, lab)
        out_g = res.graph if res.graph is not None else g
        rep = st.verify_intersected(out_g, res.coloring)
        return {"graph": codec.graph_to_json(out_g, coloring=res.coloring),
                "tree": codec.graph_to_json(res.tree) if res.tree is not None else None,
                "origin": list(res.origin) if res.origin is not None else None,
                "c0": not rep.c0_failures, "verdict": rep.verdict}
    if a == "construct-tree":
        sc = st.construct_for_tree(g, args.kind)
        rep = st.verify_intersection_total(g, sc, args.kind.replace("-intersection", ""))
        return {"graph": codec.graph_to_json(g, coloring=sc), "ok": rep.ok}
    if a == "adjacent-edge":
        sc = st.construct_adjacent_edge_intersected(g, args.strategy)
        rep = st.verify_chyper(g, sc, 6)
        return {"graph": codec.graph_to_json(g, coloring=sc), "ok": rep.ok, "conditions": rep.conditions}
    raise Usage(f"unknown setcolor action {a}")


# topcode

def _topcode_source(path):
    from .topcode import from_labeled_graph, from_set_colored_graph, with_difference_edges
    doc = codec.read_json(path)
    if isinstance(doc, dict) and "rows" in doc:
        return codec.topcode_from_json(doc, str(path))
    g, lab, col = codec.graph_from_json(doc, str(path))
    order = doc.get("edge_order")
    if lab is not None:
        if lab.edge is None:
            lab = with_difference_edges(lab, g)
        return from_labeled_graph(g, lab, order)
    if col is not None:
        if col.edge is None:
            col = col.with_intersection_edges(g)
        return from_set_colored_graph(g, col, order)
    raise Usage(f"{path}: no labels or sets to build a Topcode-matrix from")


def cmd_topcode(args) -> Dict:
    from .topcode import (SetTopcodeMatrix, TopcodeMatrix, set_string_count, string_count, string_type,
                          to_strings)
    t = _topcode_source(args.input)
    a = args.action
    if a in ("build", "set"):
        if a == "set" and not isinstance(t, SetTopcodeMatrix):
            raise Usage("input carries numbers, not sets")
        if a == "build" and not isinstance(t, TopcodeMatrix):
            raise Usage("input carries sets; use `topcode set`")
        return codec.topcode_to_json(t)
    if a == "strings":
        if isinstance(t, SetTopcodeMatrix):
            return {"rows": string_type(t, args.seed, args.sep)}
        mode = "seeded" if args.count > 1 or args.seeded else "canonical"
        return {"strings": to_strings(t, mode, args.seed, args.count, args.sep)}
    if a == "count":
        if isinstance(t, SetTopcodeMatrix):
            m, total = set_string_count(t)
            return {"entry_orderings": str(m), "count": str(total)}
        return {"count": str(string_count(t))}
    raise Usage(f"unknown topcode action {a}")


# group

def cmd_group(args) -> Dict:
    from .groups import add, build_group, inverse, to_json, verify_axioms
    a = args.action
    if a == "build":
        g, lab, col = _load_graph(args.input)
        base = col if args.flavor == "set-colored" else lab
        if base is None:
            raise Usage(f"{args.input}: no base colouring for flavor {args.flavor}")
        return to_json(build_group(g, base, args.flavor, args.modulus))
    grp = codec.group_from_json(codec.read_json(args.input), str(args.input))
    if a == "add":
        return {"index": add(grp, args.i, args.j, args.zero)}
    if a == "inverse":
        return {"index": inverse(grp, args.i, args.zero)}
    rep = verify_axioms(grp)
    return {"ok": rep.ok, "conditions": {"zero": rep.zero, "uniqueness": rep.uniqueness, "closure": rep.closure,
                                         "inverse": rep.inverse, "associative": rep.associative,
                                         "commutative": rep.commutative},
            "element_validity": {str(k): v for k, v in rep.element_validity.items()},
            "failures": rep.failures}


# lattice

def _load_base(path):
    from .lattice import LatticeBase
    doc = codec.read_json(path)
    kind = doc.get("kind", "edge-hamiltonian") if isinstance(doc, dict) else None
    items = doc.get("graphs") if isinstance(doc, dict) else None
    if not isinstance(items, list):
        raise codec.CodecError(f"{path}.graphs", "expected an array of graph documents")
    gs, cols = [], []
    for i, d in enumerate(items):
        g, _, c = codec.graph_from_json(d, f"{path}.graphs[{i}]")
        gs.append(g)
        cols.append(c)
    colorings = tuple(cols) if all(c is not None for c in cols) else None
    return LatticeBase(tuple(gs), kind, colorings)


def cmd_lattice(args) -> Dict:
    from . import lattice as lt
    a = args.action
    if a == "apply":
        g1, _, c1 = _load_graph(args.input)
        g2, _, c2 = _load_graph(args.other)
        sites = lt._norm_site(json.loads(args.sites))
        if sites not in lt.legal_sites(g1, g2, args.op):
            raise Usage(f"illegal site {args.sites} for {args.op}")
        g, c = lt.apply_op(g1, g2, args.op, sites, c1, c2)
        return codec.graph_to_json(g, coloring=c)
    if a == "sample":
        base = _load_base(args.input)
        if args.word:
            word = codec.word_from_json(codec.read_json(args.word), str(args.word))
        else:
            word = lt.LatticeWord(tuple(_ints(args.counts)), args.seed)
        s = lt.sample(base, word)
        return {"graph": codec.graph_to_json(s.graph, coloring=s.coloring),
                "trace": codec.trace_to_json(s.trace),
                "word": codec.word_to_json(lt.replay_word(word, s.trace))}
    doc = codec.read_json(args.input)
    items = doc.get("hypergraphs") if isinstance(doc, dict) else None
    if not isinstance(items, list):
        raise codec.CodecError(f"{args.input}.hypergraphs", "expected an array of hypergraph documents")
    bases = [codec.hypergraph_from_json(d, f"{args.input}.hypergraphs[{i}]") for i, d in enumerate(items)]
    table = lt.enumerate_01(bases, doc.get("kind", "edge-coincided"), args.seed)
    rows = []
    for vec, el in sorted(table.items()):
        if el is None:
            rows.append({"vector": list(vec), "element": None})
        else:
            rows.append({"vector": list(vec), "element": codec.hypergraph_to_json(el.hypergraph),
                         "graph": codec.graph_to_json(el.sample.graph)})
    return {"count": len(rows), "elements": rows}


# simulate

def _read_history(path) -> List:
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or rows[0] != ["t", "v_net", "e_net"]:
        raise codec.CodecError(f"{path}:1", "expected header t,v_net,e_net")
    out = []
    for n, r in enumerate(rows[1:], start=2):
        try:
            out.append(tuple(int(x) for x in r))
        except ValueError:
            raise codec.CodecError(f"{path}:{n}", f"bad row {r}") from None
        if len(r) != 3:
            raise codec.CodecError(f"{path}:{n}", "expected three fields")
    return out


def cmd_simulate(args) -> Dict:
    from . import netsim as ns
    a = args.action
    if a == "run":
        cfg = ns.SimConfig(args.m, args.m0, args.steps, args.seed)
        s = ns.run(cfg)
        if args.table:
            tab = ns.distributions(s, args.table)
            return {"header": ["k", "value"], "rows": [[k, repr(v)] for k, v in tab.items()],
                    "table": {str(k): v for k, v in tab.items()}}
        return {"header": ["t", "v_net", "e_net"], "rows": [list(r) for r in s.history],
                "v_net": s.v_net, "e_net": s.e_net}
    hist = _read_history(args.input)
    if a == "fit":
        law = ("linear",) if args.law == "linear" else ("exponential", args.r, args.s or args.r)
        f = ns.fit_growth(hist, law)
        return {"law": f.law, "a_v": f.a_v, "b_v": f.b_v, "a_e": f.a_e, "b_e": f.b_e}
    k = ns.kinematics(hist)
    return {"v_velocity": k.v_velocity, "e_velocity": k.e_velocity, "velocity": k.velocity,
            "speed_ratio": k.speed_ratio, "average_degree": k.average_degree, "sparse": k.sparse}


# argument parsing

def _common(p: argparse.ArgumentParser, need_in: bool = True, fmt: str = "json") -> None:
    if need_in:
        p.add_argument("--in", dest="input", required=True, help="input document")
    p.add_argument("--out", help="write here instead of stdout")
    p.add_argument("--format", choices=("json", "csv", "text"), default=fmt)


def build_parser() -> argparse.ArgumentParser:
    from .labelings import KINDS
    from .lattice import COINCIDE_OPS, HAM_OPS
    from .netsim import DIST_KINDS

    parser = argparse.ArgumentParser(prog="topocode", allow_abbrev=False,
                                     description="Set-colourings, hypergraphs and Topcode-matrices")
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", allow_abbrev=False, help="check a labeling or set-colouring")
    v.add_argument("what", choices=("labeling", "class", "intersected", "chyper"))
    _common(v)
    v.add_argument("--kind", choices=sorted(KINDS), help="labeling kind")
    v.add_argument("--c", type=int, help="magic constant")
    v.add_argument("--eta", type=int, help="felicitous modulus")
    v.add_argument("--matching", help="u1,v1,u2,v2,... for the strongly kinds")
    v.add_argument("--part-x", help="declared X side, comma separated")
    v.add_argument("--flags", help="letters a..i and class names, comma separated")
    v.add_argument("--constraint", action="append", help="e.g. abs-diff, sum-mod::7 (repeatable)")
    v.add_argument("--alpha", type=int)
    v.add_argument("--beta", type=int)
    v.add_argument("--k", type=int)
    v.add_argument("--cgraph", type=int, choices=range(1, 8), default=1)
    v.add_argument("--r", type=int, default=2)

    h = sub.add_parser("hyper", allow_abbrev=False, help="hypergraph procedures")
    h.add_argument("action", choices=("reduce", "dual", "uniform", "ears", "matching", "connectivity",
                                      "intersected", "chromatic", "adjacent", "hamilton"))
    _common(h)
    h.add_argument("--kind", choices=("hyperedge-index", "hypervertex"), default="hyperedge-index")

    s = sub.add_parser("setcolor", allow_abbrev=False, help="set-colouring constructions")
    s.add_argument("action", choices=("vset", "pscs", "construct-tree", "adjacent-edge"))
    _common(s)
    s.add_argument("--variant", type=int, choices=(1, 2, 3), default=1)
    s.add_argument("--rounds", type=int, default=1)
    s.add_argument("--kind", choices=("graceful-intersection", "odd-graceful-intersection", "rainbow"),
                   default="graceful-intersection")
    s.add_argument("--strategy", choices=("leaf-peeling", "longest-path"), default="leaf-peeling")

    t = sub.add_parser("topcode", allow_abbrev=False, help="Topcode-matrices and strings")
    t.add_argument("action", choices=("build", "set", "strings", "count"))
    _common(t)
    t.add_argument("--count", type=int, default=1)
    t.add_argument("--seed", type=int, default=None)
    t.add_argument("--seeded", action="store_true", help="random reading even for --count 1")
    t.add_argument("--sep", default="")

    g = sub.add_parser("group", allow_abbrev=False, help="every-zero graphic groups")
    g.add_argument("action", choices=("build", "add", "inverse", "check"))
    _common(g)
    g.add_argument("--flavor", choices=("labeling", "total", "set-colored"), default="labeling")
    g.add_argument("--modulus", type=int)
    g.add_argument("--i", type=int)
    g.add_argument("--j", type=int)
    g.add_argument("--zero", type=int)

    lt = sub.add_parser("lattice", allow_abbrev=False, help="graphic lattice elements")
    lt.add_argument("action", choices=("apply", "sample", "enumerate01"))
    _common(lt)
    lt.add_argument("--other", help="second graph for apply")
    lt.add_argument("--op", choices=HAM_OPS + COINCIDE_OPS)
    lt.add_argument("--sites", help="JSON site, e.g. [[0,[1]],[0,[2]]]")
    lt.add_argument("--counts", help="coefficients, comma separated")
    lt.add_argument("--word", help="word document with ops and sites")
    lt.add_argument("--seed", type=int, default=None)

    sm = sub.add_parser("simulate", allow_abbrev=False, help="preferential-attachment networks")
    sm.add_argument("action", choices=("run", "fit", "kinematics"))
    _common(sm, need_in=False, fmt="csv")
    sm.add_argument("--in", dest="input")
    sm.add_argument("--m", type=int, default=2)
    sm.add_argument("--m0", type=int)
    sm.add_argument("--steps", type=int, default=100)
    sm.add_argument("--seed", type=int, default=None)
    sm.add_argument("--table", choices=DIST_KINDS)
    sm.add_argument("--law", choices=("linear", "exponential"), default="linear")
    sm.add_argument("--r", type=float, default=2.0)
    sm.add_argument("--s", type=float)
    return parser


COMMANDS = {"verify": cmd_verify, "hyper": cmd_hyper, "setcolor": cmd_setcolor, "topcode": cmd_topcode,
            "group": cmd_group, "lattice": cmd_lattice, "simulate": cmd_simulate}


def _check_args(args) -> None:
    c, a = args.command, getattr(args, "action", None)
    if c == "verify" and args.what == "labeling" and not args.kind:
        raise Usage("verify labeling needs --kind")
    if c == "group" and a in ("add", "inverse") and (args.i is None or args.zero is None):
        raise Usage(f"group {a} needs --i and --zero")
    if c == "group" and a == "add" and args.j is None:
        raise Usage("group add needs --j")
    if c == "lattice" and a == "apply" and not (args.other and args.op and args.sites):
        raise Usage("lattice apply needs --other, --op and --sites")
    if c == "lattice" and a == "sample" and not (args.counts or args.word):
        raise Usage("lattice sample needs --counts or --word")
    if c == "simulate" and a != "run" and not args.input:
        raise Usage(f"simulate {a} needs --in")
    if getattr(args, "seed", "absent") is None:
        args.seed = _default_seed()


def _verdict(doc) -> Optional[bool]:
    if isinstance(doc, dict) and isinstance(doc.get("ok"), bool):
        return doc["ok"]
    return None


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        _check_args(args)
        doc = COMMANDS[args.command](args)
        if args.out:
            with open(args.out, "w") as fh:
                return emit(doc, args.format, fh, _verdict(doc))
        return emit(doc, args.format, sys.stdout, _verdict(doc))
    except CapExceeded as exc:
        print(f"topocode: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (TopocodeError, OSError, ValueError, KeyError) as exc:
        print(f"topocode: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
