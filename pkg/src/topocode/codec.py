"""JSON documents for graphs, hypergraphs, Topcode-matrices, groups and
lattice words.  Keys are written sorted and sets as ascending arrays, so
save(load(x)) reproduces x byte for byte when x was written by save."""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from .coloring import SetColoring
from .errors import TopocodeError
from .graph_core import Graph, norm_edge
from .hypergraph import Hypergraph, HypergraphError, validate
from .labelings import Labeling


class CodecError(TopocodeError, ValueError):
    """Malformed document; `where` names the offending field."""

    def __init__(self, where: str, msg: str):
        self.where = where
        super().__init__(f"{where}: {msg}")


def dumps(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def read_json(path) -> Any:
    text = Path(path).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise CodecError(f"{path}:{exc.lineno}:{exc.colno}", exc.msg) from None


def write_json(path, doc: Any) -> None:
    Path(path).write_text(dumps(doc))


def _need(doc: Dict, key: str, where: str):
    if not isinstance(doc, dict):
        raise CodecError(where, "expected an object")
    if key not in doc:
        raise CodecError(f"{where}.{key}", "missing")
    return doc[key]


def _int_list(xs, where: str) -> List[int]:
    if not isinstance(xs, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in xs):
        raise CodecError(where, "expected an array of integers")
    return xs


# graphs

def graph_to_json(g: Graph, labeling: Optional[Labeling] = None, coloring: Optional[SetColoring] = None,
                  edge_order=None) -> Dict:
    doc: Dict[str, Any] = {"p": g.p, "edges": [list(e) for e in g.edges]}
    if g.names is not None:
        doc["names"] = list(g.names)
    if edge_order is not None:
        doc["edge_order"] = [list(e) for e in edge_order]
    if labeling is not None:
        doc.update(labeling_to_json(labeling))
    if coloring is not None:
        doc.update(setcoloring_to_json(coloring))
    return doc


def labeling_to_json(f: Labeling) -> Dict:
    doc: Dict[str, Any] = {"vertex_labels": list(f.vertex)}
    if f.edge is not None:
        doc["edge_labels"] = [[a, b, c] for (a, b), c in sorted(f.edge.items())]
    return doc


def setcoloring_to_json(sc: SetColoring) -> Dict:
    doc: Dict[str, Any] = {"vertex_sets": [sorted(s) for s in sc.vertex]}
    if sc.edge is not None:
        doc["edge_sets"] = [[a, b, sorted(s)] for (a, b), s in sorted(sc.edge.items())]
    if sc.constraints:
        doc["constraints"] = [constraint_text(c) for c in sc.constraints]
    return doc


def constraint_text(c) -> str:
    """Inverse of setcolor.parse_constraint; strings pass through."""
    if isinstance(c, str):
        return c
    parts = [c.kind, "" if c.k is None else str(c.k), "" if c.modulus is None else str(c.modulus)]
    return ":".join(parts).rstrip(":")


def graph_from_json(doc: Dict, where: str = "graph") -> Tuple[Graph, Optional[Labeling], Optional[SetColoring]]:
    p = _need(doc, "p", where)
    if not isinstance(p, int) or p < 0:
        raise CodecError(f"{where}.p", "expected a non-negative integer")
    raw = _need(doc, "edges", where)
    if not isinstance(raw, list):
        raise CodecError(f"{where}.edges", "expected an array")
    edges = []
    for i, e in enumerate(raw):
        e = _int_list(e, f"{where}.edges[{i}]")
        if len(e) != 2 or not all(0 <= x < p for x in e) or e[0] == e[1]:
            raise CodecError(f"{where}.edges[{i}]", f"bad edge {e} for p={p}")
        edges.append(tuple(e))
    if len({norm_edge(*e) for e in edges}) != len(edges):
        raise CodecError(f"{where}.edges", "duplicate edge")
    g = Graph(p, edges, doc.get("names"))
    lab = None
    if "vertex_labels" in doc:
        v = _int_list(doc["vertex_labels"], f"{where}.vertex_labels")
        if len(v) != p:
            raise CodecError(f"{where}.vertex_labels", f"expected {p} labels")
        el = None
        if "edge_labels" in doc:
            el = {}
            for i, t in enumerate(doc["edge_labels"]):
                t = _int_list(t, f"{where}.edge_labels[{i}]")
                if len(t) != 3 or not g.has_edge(t[0], t[1]):
                    raise CodecError(f"{where}.edge_labels[{i}]", "expected [u, v, value] on an edge")
                el[(t[0], t[1])] = t[2]
        lab = Labeling(v, el)
    col = None
    if "vertex_sets" in doc:
        vs = doc["vertex_sets"]
        if not isinstance(vs, list) or len(vs) != p:
            raise CodecError(f"{where}.vertex_sets", f"expected {p} sets")
        vs = [_int_list(s, f"{where}.vertex_sets[{i}]") for i, s in enumerate(vs)]
        es = None
        if "edge_sets" in doc:
            es = {}
            for i, t in enumerate(doc["edge_sets"]):
                if not isinstance(t, list) or len(t) != 3 or not g.has_edge(t[0], t[1]):
                    raise CodecError(f"{where}.edge_sets[{i}]", "expected [u, v, [set]] on an edge")
                es[(t[0], t[1])] = _int_list(t[2], f"{where}.edge_sets[{i}][2]")
        col = SetColoring(vs, es, tuple(doc.get("constraints", ())))
    return g, lab, col


# hypergraphs

def hypergraph_to_json(h: Hypergraph) -> Dict:
    return {"ground": list(h.ground), "edges": [list(e) for e in h.edges]}


def hypergraph_from_json(doc: Dict, where: str = "hypergraph") -> Hypergraph:
    ground = _int_list(_need(doc, "ground", where), f"{where}.ground")
    raw = _need(doc, "edges", where)
    if not isinstance(raw, list):
        raise CodecError(f"{where}.edges", "expected an array of arrays")
    fam = [_int_list(e, f"{where}.edges[{i}]") for i, e in enumerate(raw)]
    try:
        return validate(ground, fam)
    except HypergraphError as exc:
        raise CodecError(f"{where}.edges", "; ".join(exc.problems)) from None


def hypergraph_doc_is_canonical(doc: Dict) -> bool:
    h = hypergraph_from_json(doc)
    return hypergraph_to_json(h) == doc


# Topcode-matrices

def topcode_to_json(t) -> Dict:
    from .topcode import SetTopcodeMatrix
    kind = "set" if isinstance(t, SetTopcodeMatrix) else "numeric"
    return {"kind": kind, "rows": t.rows()}


def topcode_from_json(doc: Dict, where: str = "topcode"):
    from .topcode import SetTopcodeMatrix, TopcodeMatrix
    rows = _need(doc, "rows", where)
    if not isinstance(rows, list) or len(rows) != 3:
        raise CodecError(f"{where}.rows", "expected three rows")
    if doc.get("kind", "numeric") == "set":
        sets = [[frozenset(_int_list(s, f"{where}.rows[{r}][{c}]")) for c, s in enumerate(row)]
                for r, row in enumerate(rows)]
        try:
            return SetTopcodeMatrix(*(tuple(r) for r in sets))
        except TopocodeError as exc:
            raise CodecError(f"{where}.rows", str(exc)) from None
    rows = [_int_list(r, f"{where}.rows[{i}]") for i, r in enumerate(rows)]
    try:
        return TopcodeMatrix(*(tuple(r) for r in rows))
    except TopocodeError as exc:
        raise CodecError(f"{where}.rows", str(exc)) from None


# groups and lattice words

def group_from_json(doc: Dict, where: str = "group"):
    from .groups import build_group
    g, _, _ = graph_from_json(_need(doc, "graph", where), f"{where}.graph")
    flavor = _need(doc, "flavor", where)
    base_doc = dict(_need(doc, "base", where))
    base_doc.setdefault("p", g.p)
    base_doc.setdefault("edges", [list(e) for e in g.edges])
    _, lab, col = graph_from_json(base_doc, f"{where}.base")
    base = col if flavor == "set-colored" else lab
    if base is None:
        raise CodecError(f"{where}.base", f"no base colouring for flavor {flavor}")
    return build_group(g, base, flavor, doc.get("modulus"))


def word_to_json(word) -> Dict:
    doc: Dict[str, Any] = {"counts": list(word.counts), "seed": word.seed}
    if word.order is not None:
        doc["order"] = list(word.order)
    if word.ops is not None:
        doc["ops"] = list(word.ops)
    if word.sites is not None:
        doc["sites"] = _listify(word.sites)
    return doc


def _listify(x):
    if isinstance(x, (list, tuple)):
        return [_listify(y) for y in x]
    return x


def word_from_json(doc: Dict, where: str = "word"):
    from .lattice import LatticeWord, _norm_site
    counts = _int_list(_need(doc, "counts", where), f"{where}.counts")
    return LatticeWord(tuple(counts), int(doc.get("seed", 0)),
                       tuple(doc["order"]) if "order" in doc else None,
                       tuple(doc["ops"]) if "ops" in doc else None,
                       tuple(_norm_site(s) for s in doc["sites"]) if "sites" in doc else None)


def trace_to_json(trace) -> List[Dict]:
    return [{k: _listify(v) for k, v in step.items()} for step in trace]


LOADERS = {
    "graph": graph_from_json,
    "hypergraph": hypergraph_from_json,
    "topcode": topcode_from_json,
    "group": group_from_json,
    "word": word_from_json,
}


def load(path, kind: str):
    if kind not in LOADERS:
        raise CodecError("kind", f"unknown document kind {kind!r}")
    return LOADERS[kind](read_json(path), str(path))


def save(path, doc: Dict) -> None:
    write_json(path, doc)
