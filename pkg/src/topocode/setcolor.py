"""Set-colorings of graphs: class verifiers, the leaf-peeling constructions
on trees, SDR, the adjacent 1-common edge-coloring index, and colour
propagation through splitting and coinciding.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .coloring import SetColoring, fs
from .errors import CapExceeded, PreconditionError
from .graph_core import (Edge, Graph, check_homomorphism, coincide_edges, coincide_vertices,
                         norm_edge, split_edge, split_vertex)
from .hypergraph import chromatic_number
from .labelings import Labeling, any_graceful, odd_range

CHI_SET_CAP = 12


# constraint catalog

CONSTRAINT_KINDS = ("intersection-c0", "abs-diff", "sum-mod", "edge-magic", "edge-magic-graceful",
                    "felicitous-diff", "graceful-diff", "group-add")


@dataclass(frozen=True)
class Constraint:
    kind: str
    k: Optional[int] = None
    modulus: Optional[int] = None

    def __post_init__(self):
        if self.kind not in CONSTRAINT_KINDS:
            raise PreconditionError(f"unknown constraint {self.kind!r}")
        if self.kind in ("edge-magic", "edge-magic-graceful", "felicitous-diff", "graceful-diff",
                         "group-add") and self.k is None:
            raise PreconditionError(f"constraint {self.kind} needs k")
        if self.kind in ("sum-mod", "group-add") and not self.modulus:
            raise PreconditionError(f"constraint {self.kind} needs a modulus")

    def holds(self, a: int, b: int, c: int) -> bool:
        """Does the triple (a in F(u), b in F(v), c in F(uv)) satisfy the rule?"""
        k, m = self.k, self.modulus
        kind = self.kind
        if kind == "intersection-c0":
            return a == b == c
        if kind == "abs-diff":
            return c == abs(a - b)
        if kind == "sum-mod":
            return (a + b - c) % m == 0
        if kind == "edge-magic":
            return a + b + c == k
        if kind == "edge-magic-graceful":
            return abs(a + b - c) == k
        if kind == "felicitous-diff":
            return abs(abs(a - b) - c) == k
        if kind == "graceful-diff":
            return c + abs(a - b) == k
        return (a + b - k - c) % m == 0


C0 = Constraint("intersection-c0")


def parse_constraint(text: str) -> Constraint:
    """'abs-diff', 'edge-magic:10', 'sum-mod::7', 'group-add:1:5'."""
    parts = text.split(":")
    k = int(parts[1]) if len(parts) > 1 and parts[1] else None
    m = int(parts[2]) if len(parts) > 2 and parts[2] else None
    if parts[0] == "sum-mod" and m is None and k is not None:
        k, m = None, k
    return Constraint(parts[0], k, m)


def _edge_sets(g: Graph, sc: SetColoring) -> Dict[Edge, frozenset]:
    if sc.edge is not None:
        return {e: sc.edge[e] for e in g.edges if e in sc.edge}
    return {e: sc.vertex[e[0]] & sc.vertex[e[1]] for e in g.edges}


# classes of set-colorings

NAMED_CLASSES = {
    "strong-vertex-set-labeling": ("a", "f"),
    "strong-edge-set-labeling": ("b", "g"),
    "strongly-induced-edge-set-labeling": ("g", "h"),
    "strongly-total-set-labeling": ("c", "f", "g"),
    "strong-set-coloring": ("a", "f", "h", "i"),
    "set-labeling": ("a", "d"),
    "edge-set-labeling": ("b", "e"),
    "total-set-coloring": ("c", "d", "e"),
    "set-coloring": ("a", "d", "e", "h"),
}
PSEUDO_CLASSES = ("pseudo-vertex-set-labeling", "pseudo-edge-set-labeling", "pseudo-total-set-coloring")
UNIFORM_CLASSES = ("alpha-uniform", "beta-uniform", "k-uniform")


@dataclass
class ClassReport:
    ok: bool
    conditions: Dict[str, bool]
    classes: Dict[str, bool]
    uniformity: Dict[str, Optional[int]]
    problems: List[str] = field(default_factory=list)

    def __bool__(self):
        return self.ok


def _conditions(g: Graph, sc: SetColoring, constraints: Sequence[Constraint]) -> Tuple[Dict[str, bool], List[str]]:
    vs = sc.vertex
    es = sc.edge or {}
    has_v = len(vs) == g.p
    has_e = all(e in es for e in g.edges)
    cond: Dict[str, bool] = {"a": has_v, "b": has_e, "c": has_v and has_e}
    probs: List[str] = []
    if has_v:
        same = [e for e in g.edges if vs[e[0]] == vs[e[1]]]
        cond["d"] = not same
        probs += [f"(d) edge {e} joins equal vertex sets" for e in same]
        cond["f"] = len(set(vs)) == g.p
    if has_e:
        clash = [(e1, e2) for e1, e2 in combinations(g.edges, 2)
                 if set(e1) & set(e2) and es[e1] == es[e2]]
        cond["e"] = not clash
        probs += [f"(e) adjacent edges {a} {b} carry equal sets" for a, b in clash]
        cond["g"] = len({es[e] for e in g.edges}) == g.q
        cond["i"] = cond["g"]
    if has_v and has_e:
        rules = [c for c in constraints] or [C0]
        bad = []
        for e in g.edges:
            fu, fv = vs[e[0]], vs[e[1]]
            for c in es[e]:
                if not any(r.holds(a, b, c) for r in rules for a in fu for b in fv):
                    bad.append((e, c))
        cond["h"] = not bad
        probs += [f"(h) element {c} of edge {e} has no generating pair" for e, c in bad]
    return cond, probs


def uniformity_constants(g: Graph, sc: SetColoring) -> Dict[str, Optional[int]]:
    vs = [len(s) for s in sc.vertex]
    es = [len(s) for s in (sc.edge or {}).values()]
    tot = vs + es
    return {
        "v_s": min(vs, default=None), "v_l": max(vs, default=None),
        "e_s": min(es, default=None), "e_l": max(es, default=None),
        "t_s": min(tot, default=None), "t_l": max(tot, default=None),
    }


def verify_class(g: Graph, sc: SetColoring, flags: Iterable[str],
                 constraints: Sequence[Constraint] = (), alpha: Optional[int] = None,
                 beta: Optional[int] = None, k: Optional[int] = None) -> ClassReport:
    """Evaluate the selected letters a..i and named classes.

    Uniformity constants are always reported; the uniform classes are only
    judged when requested.  Letters whose domain is missing count as false.
    """
    flags = list(flags)
    cond, probs = _conditions(g, sc, constraints)
    uni = uniformity_constants(g, sc)
    picked: Dict[str, bool] = {}
    classes: Dict[str, bool] = {}
    for fl in flags:
        if len(fl) == 1 and fl in "abcdefghi":
            picked[fl] = cond.get(fl, False)
        elif fl in NAMED_CLASSES:
            classes[fl] = all(cond.get(x, False) for x in NAMED_CLASSES[fl])
        elif fl == "pseudo-vertex-set-labeling":
            classes[fl] = cond["a"] and not cond.get("d", False)
        elif fl == "pseudo-edge-set-labeling":
            classes[fl] = cond["b"] and not cond.get("e", False)
        elif fl == "pseudo-total-set-coloring":
            classes[fl] = cond["c"] and not (cond.get("d", False) and cond.get("e", False))
        elif fl == "alpha-uniform":
            classes[fl] = uni["v_s"] is not None and uni["v_s"] == uni["v_l"] and (alpha is None or uni["v_s"] == alpha)
        elif fl == "beta-uniform":
            classes[fl] = uni["e_s"] is not None and uni["e_s"] == uni["e_l"] and (beta is None or uni["e_s"] == beta)
        elif fl == "k-uniform":
            classes[fl] = uni["t_s"] is not None and uni["t_s"] == uni["t_l"] and (k is None or uni["t_s"] == k)
        else:
            raise PreconditionError(f"unknown class flag {fl!r}")
    ok = all(picked.values()) and all(classes.values())
    picked.update({x: v for x, v in cond.items() if x not in picked})
    return ClassReport(ok, picked, classes, uni, probs)


@dataclass
class IntersectedReport:
    ok: bool
    c0_failures: List[Edge]
    constraint_failures: Dict[str, List[Edge]]
    verdict: str
    missing_edges: List[Edge]

    def __bool__(self):
        return self.ok


def verify_intersected(g: Graph, sc: SetColoring, constraints: Sequence[Constraint] = (C0,)) -> IntersectedReport:
    """c0 on every edge, each further constraint witnessed on every edge, and
    whether every intersecting vertex pair is joined ("intersected-graph") or
    not ("subgraph")."""
    sc.check_shape(g, need_edges=True)
    vs, es = sc.vertex, sc.edge
    c0_bad = [e for e in g.edges if not (vs[e[0]] & vs[e[1]]) or not (vs[e[0]] & vs[e[1]]) <= es[e]]
    cbad: Dict[str, List[Edge]] = {}
    for i, r in enumerate(constraints):
        if r.kind == "intersection-c0":
            continue
        name = f"{r.kind}#{i}"
        cbad[name] = [e for e in g.edges if not any(
            r.holds(a, b, c) for a in vs[e[0]] for b in vs[e[1]] for c in es[e])]
    missing = [(x, y) for x, y in combinations(range(g.p), 2)
               if not g.has_edge(x, y) and vs[x] & vs[y]]
    ok = not c0_bad and not any(cbad.values())
    return IntersectedReport(ok, c0_bad, cbad, "intersected-graph" if not missing else "subgraph", missing)


# matchings

def _augment(left: int, adj: List[List[int]], match_r: Dict[int, int], seen: set, banned=frozenset()) -> bool:
    for r in adj[left]:
        if r in seen or r in banned:
            continue
        seen.add(r)
        if r not in match_r or _augment(match_r[r], adj, match_r, seen, banned):
            match_r[r] = left
            return True
    return False


def max_matching(adj: List[List[int]]) -> Dict[int, int]:
    """Kuhn's algorithm.  Returns right -> left."""
    match_r: Dict[int, int] = {}
    for left in range(len(adj)):
        _augment(left, adj, match_r, set())
    return match_r


def lex_smallest_matching(adj: List[List[int]]) -> Optional[List[int]]:
    """Left-saturating matching whose value sequence is lexicographically least."""
    n = len(adj)
    if len(max_matching(adj)) < n:
        return None
    chosen: List[int] = []
    for i in range(n):
        for r in sorted(adj[i]):
            if r in chosen:
                continue
            rest = [[x for x in adj[j] if x not in chosen and x != r] for j in range(i + 1, n)]
            if len(max_matching(rest)) == len(rest):
                chosen.append(r)
                break
    return chosen


def hall_violator(family: Sequence[Iterable[int]]) -> Optional[List[int]]:
    """Indices S with |S| > |union of A_i, i in S|, found by alternating paths."""
    sets = [sorted(set(a)) for a in family]
    match_r = max_matching(sets)
    matched_left = set(match_r.values())
    free = [i for i in range(len(sets)) if i not in matched_left]
    if not free:
        return None
    left_of = {l: r for r, l in match_r.items()}
    s_left = {free[0]}
    stack = [free[0]]
    seen_r = set()
    while stack:
        i = stack.pop()
        for r in sets[i]:
            if r in seen_r:
                continue
            seen_r.add(r)
            j = match_r.get(r)
            if j is not None and j not in s_left:
                s_left.add(j)
                stack.append(j)
    del left_of
    return sorted(s_left)


@dataclass
class SdrResult:
    representatives: Optional[List[int]]
    violator: Optional[List[int]] = None

    def __bool__(self):
        return self.representatives is not None


def sdr(family: Sequence[Iterable[int]]) -> SdrResult:
    """Distinct representatives, lexicographically least, or a Hall violator."""
    sets = [sorted(set(int(x) for x in a)) for a in family]
    reps = lex_smallest_matching(sets)
    if reps is not None:
        return SdrResult(reps)
    return SdrResult(None, hall_violator(sets))


# intersection total set-labelings

@dataclass
class IntersectionTotalReport:
    ok: bool
    representatives: Optional[Dict[Edge, int]]
    unmatched: List[int] = field(default_factory=list)
    problems: List[str] = field(default_factory=list)

    def __bool__(self):
        return self.ok


def verify_intersection_total(g: Graph, sc: SetColoring, kind: str) -> IntersectionTotalReport:
    """Graceful / odd-graceful / rainbow intersection total set-labeling check.

    Edge sets are F(u) & F(v); if the colouring carries edge sets they must
    agree.  Representatives come from the lexicographically least matching of
    edges (in stored order) to target values.
    """
    sc.check_shape(g)
    q = g.q
    vs = sc.vertex
    probs = []
    inter = {e: vs[e[0]] & vs[e[1]] for e in g.edges}
    if sc.edge is not None:
        for e in g.edges:
            if sc.edge.get(e) != inter[e]:
                probs.append(f"edge {e} set differs from F(u)&F(v)")
    if kind in ("graceful", "rainbow"):
        target = list(range(1, q + 1))
    elif kind == "odd-graceful":
        target = sorted(odd_range(q))
    else:
        raise PreconditionError(f"unknown kind {kind!r}")
    if kind == "rainbow":
        ks = []
        for x, s in enumerate(vs):
            if not s or s != frozenset(range(1, max(s) + 1)) or max(s) > q:
                probs.append(f"vertex {x} set is not an initial interval [1,k] with k <= q")
            else:
                ks.append(max(s))
        if set(ks) != set(range(1, q + 1)):
            probs.append("vertex sets do not use every [1,k], k in [1,q]")
    pos = {t: i for i, t in enumerate(target)}
    adj = [sorted(pos[x] for x in inter[e] if x in pos) for e in g.edges]
    m = lex_smallest_matching(adj)
    if m is None:
        got = max_matching(adj)
        unmatched = [target[i] for i in range(len(target)) if i not in got]
        return IntersectionTotalReport(False, None, unmatched, probs + ["no representative system"])
    reps = {e: target[m[i]] for i, e in enumerate(g.edges)}
    return IntersectionTotalReport(not probs, reps, [], probs)


# constructions on trees

def _need_tree(t: Graph):
    if not t.is_tree():
        raise PreconditionError("input is not a tree")


def edge_label_sets(g: Graph, edge_value: Mapping[Edge, int]) -> SetColoring:
    """F(x) = {f(xy)}, F(uv) = {f(uv)}."""
    vert = [{edge_value[norm_edge(x, y)] for y in g.neighbors(x)} for x in g.vertices()]
    return SetColoring(vert, {e: {edge_value[e]} for e in g.edges}, ("intersection-c0",))


def construct_for_tree(t: Graph, kind: str = "graceful-intersection") -> SetColoring:
    _need_tree(t)
    if t.q == 0:
        raise PreconditionError("tree needs at least one edge")
    if kind in ("graceful-intersection", "odd-graceful-intersection"):
        f = any_graceful(t, odd=kind.startswith("odd"))
        ev = {(a, b): abs(f.vertex[a] - f.vertex[b]) for a, b in t.edges}
        return edge_label_sets(t, ev)
    if kind == "rainbow":
        # BFS from 0: vertex k-th in BFS order (k >= 1) gets [1, q+1-k], root gets [1,q]
        order = sorted(t.vertices(), key=lambda x: (t.distances_from(0)[x], x))
        val = {order[0]: t.q}
        for i, x in enumerate(order[1:]):
            val[x] = t.q - i
        vert = [set(range(1, val[x] + 1)) for x in t.vertices()]
        sc = SetColoring(vert)
        return sc.with_intersection_edges(t)
    raise PreconditionError(f"unknown kind {kind!r}")


@dataclass(frozen=True)
class Peeling:
    """Leaf layers of a tree down to a star; parent[x] is x's neighbour one layer in."""
    layers: Tuple[Tuple[int, ...], ...]
    parent: Tuple[Optional[int], ...]
    center: int


def peel(t: Graph) -> Peeling:
    """Strip leaves layer by layer until a star (or K1/K2) remains; the star's
    leaves form the last layer and its centre (smaller id for K2) is the root."""
    _need_tree(t)
    alive = set(t.vertices())
    parent: List[Optional[int]] = [None] * t.p
    layers = []

    def nb(x):
        return [y for y in t.neighbors(x) if y in alive]

    while True:
        if len(alive) == 1:
            center = next(iter(alive))
            break
        hubs = [x for x in alive if len(nb(x)) == len(alive) - 1]
        if hubs and all(len(nb(x)) == 1 for x in alive if x != min(hubs)):
            center = min(hubs)
            last = tuple(sorted(alive - {center}))
            for x in last:
                parent[x] = center
            layers.append(last)
            break
        leaves = tuple(sorted(x for x in alive if len(nb(x)) == 1))
        for x in leaves:
            parent[x] = nb(x)[0]
        layers.append(leaves)
        alive -= set(leaves)
    return Peeling(tuple(layers), tuple(parent), center)


def _vset_round(t: Graph, pl: Peeling, prev: Sequence[frozenset]) -> List[frozenset]:
    return [prev[x] | prev[pl.parent[x]] if pl.parent[x] is not None else prev[x]
            for x in t.vertices()]


def vset_coloring(t: Graph, f: Labeling) -> SetColoring:
    """Leaf-peeling set-colouring: a peeled vertex w gets {f(w), f(parent)}, the
    final centre gets {f(centre)}; edges get F(u) & F(v)."""
    _need_tree(t)
    if len(f.vertex) != t.p or len(set(f.vertex)) != t.p:
        raise PreconditionError("vertex labeling must be injective and total")
    pl = peel(t)
    base = [fs([v]) for v in f.vertex]
    return SetColoring(_vset_round(t, pl, base)).with_intersection_edges(t)


@dataclass
class PscsResult:
    coloring: SetColoring
    tree: Optional[Graph] = None
    tree_coloring: Optional[SetColoring] = None
    origin: Optional[List[int]] = None
    graph: Optional[Graph] = None


def max_rounds(t: Graph) -> int:
    return max(1, t.diameter() // 2)


def _iterate(t: Graph, start: Sequence[frozenset], rounds: int) -> List[frozenset]:
    if rounds < 1 or rounds > max_rounds(t):
        raise PreconditionError(f"rounds must lie in [1, {max_rounds(t)}] for this tree")
    pl = peel(t)
    cur = list(start)
    for _ in range(rounds):
        cur = _vset_round(t, pl, cur)
    return cur


def pscs1(t: Graph, f: Labeling, rounds: int = 1) -> PscsResult:
    _need_tree(t)
    if len(f.vertex) != t.p or len(set(f.vertex)) != t.p:
        raise PreconditionError("vertex labeling must be injective and total")
    ev = [abs(f.vertex[a] - f.vertex[b]) for a, b in t.edges]
    if len(set(ev)) != t.q:
        raise PreconditionError("induced edge labels must be pairwise distinct")
    cur = _iterate(t, [fs([v]) for v in f.vertex], rounds)
    return PscsResult(SetColoring(cur).with_intersection_edges(t))


def pscs2(t: Graph, f: Labeling, rounds: int = 1) -> PscsResult:
    """Start from F(x) = {edge labels at x} and apply leaf-peeling rounds."""
    _need_tree(t)
    ev = {(a, b): abs(f.vertex[a] - f.vertex[b]) for a, b in t.edges}
    if len(set(ev.values())) != t.q:
        raise PreconditionError("induced edge labels must be pairwise distinct")
    start = edge_label_sets(t, ev).vertex
    cur = _iterate(t, start, rounds)
    return PscsResult(SetColoring(cur).with_intersection_edges(t))


def split_to_tree(g: Graph) -> Tuple[Graph, List[int]]:
    """Vertex-split a connected graph into a spanning tree on q+1 vertices.

    Each step takes the least edge xy lying on a cycle and splits x so the
    new copy keeps only y.  origin[i] is the original vertex of tree vertex i.
    """
    if not g.is_connected():
        raise PreconditionError("graph must be connected")
    cur = g
    origin = list(range(g.p))
    while cur.q > cur.p - 1:
        for x, y in cur.edges:
            rest = Graph(cur.p, [e for e in cur.edges if e != (x, y)])
            if rest.is_connected():
                break
        if cur.degree(x) < 2:
            x, y = y, x
        cur = split_vertex(cur, x, cur.neighbors(x) - {y})
        origin.append(origin[x])
    return cur, origin


def pscs3(g: Graph, h: Labeling, rounds: int = 1) -> PscsResult:
    """Split to a tree, colour it by leaf-peeling plus the difference rule, fill
    missing values so vertex sets differ, then merge split copies by union.

    Edge sets on g are F(uv) of the tree edge widened by the merged vertex
    intersection, so c0 holds after recombination.
    """
    if g.is_tree() or not g.is_connected():
        raise PreconditionError("variant 3 needs a connected graph with a cycle")
    hv = h.vertex
    ev = [abs(hv[a] - hv[b]) for a, b in g.edges]
    if len(set(ev)) != g.q:
        raise PreconditionError("labeling must be edge-injective")
    t, origin = split_to_tree(g)
    tl = [hv[origin[x]] for x in t.vertices()]
    cur = _iterate(t, [fs([v]) for v in tl], rounds)
    # fill [min, max] gaps so that the sets cover an interval and differ
    lam = set().union(*cur)
    spare = [x for x in range(min(lam), max(lam) + 1) if x not in lam]
    cur = list(cur)
    for s in spare:
        seen = set()
        target = 0
        for i, st in enumerate(cur):
            if st in seen:
                target = i
                break
            seen.add(st)
        cur[target] = cur[target] | {s}
    while len(set(cur)) < len(cur):
        # duplicates left after filling: widen the later copy with a fresh value
        top = max(set().union(*cur)) + 1
        seen = set()
        for i, st in enumerate(cur):
            if st in seen:
                cur[i] = st | {top}
                break
            seen.add(st)
    tedge = {(a, b): (cur[a] & cur[b]) | {abs(tl[a] - tl[b])} for a, b in t.edges}
    tree_sc = SetColoring(cur, tedge, ("intersection-c0", "abs-diff"))
    merged = [frozenset() for _ in range(g.p)]
    for x in t.vertices():
        merged[origin[x]] = merged[origin[x]] | cur[x]
    gedge = {}
    for (a, b), st in tedge.items():
        e = norm_edge(origin[a], origin[b])
        gedge[e] = st | (merged[e[0]] & merged[e[1]])
    return PscsResult(SetColoring(merged, gedge, ("intersection-c0", "abs-diff")), t, tree_sc, origin, g)


def pscs4(base: Sequence[Tuple[Graph, Labeling]], rounds: int = 1) -> PscsResult:
    """Colour each base graph (trees by variant 1, others by variant 3), then
    coincide equally labelled vertices and merge by union."""
    from .labelings import verify_edge_odd_graceful_base
    if not verify_edge_odd_graceful_base(base):
        raise PreconditionError("not an edge-odd-graceful base")
    labels = sorted(set().union(*[set(f.vertex) for _, f in base]))
    idx = {v: i for i, v in enumerate(labels)}
    vsets: List[frozenset] = [frozenset() for _ in labels]
    esets: Dict[Edge, frozenset] = {}
    for g, f in base:
        if g.is_tree():
            sc = pscs1(g, f, min(rounds, max_rounds(g)) if g.q else 1).coloring
        else:
            sc = pscs3(g, f, rounds).coloring
        for x in g.vertices():
            w = idx[f.vertex[x]]
            vsets[w] = vsets[w] | sc.vertex[x]
        for (a, b), st in sc.edge.items():
            e = norm_edge(idx[f.vertex[a]], idx[f.vertex[b]])
            esets[e] = esets.get(e, frozenset()) | st
    gstar = Graph(len(labels), list(esets))
    return PscsResult(SetColoring(vsets, esets), graph=gstar)


def pscs(inp, variant: int, rounds: int = 1, labeling: Optional[Labeling] = None) -> PscsResult:
    """Variants 1-3 take a graph plus `labeling`; variant 4 takes the base list."""
    if variant == 4:
        return pscs4(inp, rounds)
    fn = {1: pscs1, 2: pscs2, 3: pscs3}.get(variant)
    if fn is None:
        raise PreconditionError(f"unknown PSCS variant {variant}")
    if labeling is None:
        raise PreconditionError(f"variant {variant} needs a labeling")
    return fn(inp, labeling, rounds)


# Chyper conditions

CGRAPH = {
    1: ("chyper-1",),
    2: ("chyper-2",),
    3: ("chyper-1", "chyper-3"),
    4: ("chyper-2", "chyper-3"),
    5: ("chyper-3",),
    6: ("chyper-3", "chyper-4"),
    7: ("chyper-3", "chyper-5"),
}
CGRAPH_NAMES = {
    1: "subintersected", 2: "r-rank-subintersected", 3: "intersected-edge-intersected",
    4: "r-rank-intersected-edge-intersected", 5: "edge-intersected",
    6: "adjacent-edge-intersected", 7: "individual-edge-intersected",
}


@dataclass
class ChyperReport:
    ok: bool
    conditions: Dict[str, bool]
    preamble: bool

    def __bool__(self):
        return self.ok


def verify_chyper(g: Graph, sc: SetColoring, kind: int, r: int = 2) -> ChyperReport:
    """Evaluate Cgraph-`kind`.  The preamble (distinct vertex sets, distinct sets
    on adjacent edges) is reported but does not decide the verdict."""
    if kind not in CGRAPH:
        raise PreconditionError(f"unknown Cgraph kind {kind}")
    sc.check_shape(g, need_edges=True)
    vs, es = sc.vertex, sc.edge
    adjacent_pairs = [(e1, e2) for e1, e2 in combinations(g.edges, 2) if set(e1) & set(e2)]
    checks = {
        "chyper-1": lambda: all((vs[u] & vs[v]) and (vs[u] & vs[v]) <= es[(u, v)] for u, v in g.edges),
        "chyper-2": lambda: all(len(vs[u] & vs[v]) >= r and (vs[u] & vs[v]) <= es[(u, v)] for u, v in g.edges),
        "chyper-3": lambda: all(es[(u, v)] & vs[u] and es[(u, v)] & vs[v] for u, v in g.edges),
        "chyper-4": lambda: all(es[a] & es[b] for a, b in adjacent_pairs),
        "chyper-5": lambda: all(not (es[a] & es[b]) for a, b in adjacent_pairs),
    }
    cond = {name: bool(checks[name]()) for name in CGRAPH[kind]}
    pre = len(set(vs)) == g.p and all(es[a] != es[b] for a, b in adjacent_pairs)
    return ChyperReport(all(cond.values()), cond, pre)


def _graceful_edges(t: Graph) -> Dict[Edge, int]:
    f = any_graceful(t)
    return {(a, b): abs(f.vertex[a] - f.vertex[b]) for a, b in t.edges}


def construct_adjacent_edge_intersected(t: Graph, strategy: str = "leaf-peeling",
                                        edge_value: Optional[Mapping[Edge, int]] = None) -> SetColoring:
    """Total set-labeling of a tree with adjacent edge sets always meeting.

    Vertex sets are the incident edge labels of a graceful labeling.
    leaf-peeling: the edges from v to its peeled children all get
    D(v) = union of the children's D, the child edge labels and v's parent
    edge label; the centre's edges get the union over its children.
    longest-path: repeatedly take the least longest path x1..xn, give each
    leaf edge at x2 (and at x(n-1)) its own label plus the label of the edge
    pointing inward, and strip those leaves; the final star's edges share the
    union of their labels.
    """
    _need_tree(t)
    if t.q == 0:
        raise PreconditionError("tree needs at least one edge")
    ev = dict(edge_value) if edge_value is not None else _graceful_edges(t)
    vert = edge_label_sets(t, ev).vertex
    edge_sets: Dict[Edge, frozenset] = {}
    if strategy == "leaf-peeling":
        pl = peel(t)
        down: Dict[int, frozenset] = {}
        children: Dict[int, List[int]] = {x: [] for x in t.vertices()}
        for x in t.vertices():
            if pl.parent[x] is not None:
                children[pl.parent[x]].append(x)
        order = [x for layer in pl.layers for x in layer] + [pl.center]
        for v in order:
            kids = children[v]
            if not kids:
                continue
            d = set()
            for c in kids:
                d |= down.get(c, frozenset())
                d.add(ev[norm_edge(c, v)])
            if pl.parent[v] is not None:
                d.add(ev[norm_edge(v, pl.parent[v])])
            down[v] = frozenset(d)
            for c in kids:
                edge_sets[norm_edge(c, v)] = down[v]
    elif strategy == "longest-path":
        alive = set(t.vertices())
        while True:
            sub_edges = [e for e in t.edges if e[0] in alive and e[1] in alive]
            if not sub_edges:
                break
            nb = {x: [y for y in t.neighbors(x) if y in alive] for x in alive}
            dist = {x: _bfs(nb, x) for x in sorted(alive)}
            dmax = max(max(d.values()) for d in dist.values())
            if dmax < 3:
                # star (or single edge): shared union
                u = frozenset(ev[e] for e in sub_edges)
                for e in sub_edges:
                    edge_sets[e] = u if dmax == 2 else frozenset({ev[e]})
                break
            a, b = min((x, y) for x in sorted(alive) for y, dd in dist[x].items() if dd == dmax and x < y)
            path = _tree_path(nb, a, b)
            strip = set()
            for hub, inward in ((path[1], path[2]), (path[-2], path[-3])):
                for y in nb[hub]:
                    if y == inward:
                        continue
                    e = norm_edge(hub, y)
                    edge_sets[e] = frozenset({ev[e], ev[norm_edge(hub, inward)]})
                    strip.add(y)
            alive -= strip
    else:
        raise PreconditionError(f"unknown strategy {strategy!r}")
    return SetColoring(vert, edge_sets, ("intersection-c0",))


def _bfs(nb: Mapping[int, List[int]], s: int) -> Dict[int, int]:
    dist = {s: 0}
    frontier = [s]
    while frontier:
        nxt = []
        for x in frontier:
            for y in nb[x]:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    nxt.append(y)
        frontier = nxt
    return dist


def _tree_path(nb: Mapping[int, List[int]], a: int, b: int) -> List[int]:
    prev = {a: None}
    frontier = [a]
    while b not in prev:
        nxt = []
        for x in frontier:
            for y in nb[x]:
                if y not in prev:
                    prev[y] = x
                    nxt.append(y)
        frontier = nxt
    out = [b]
    while out[-1] != a:
        out.append(prev[out[-1]])
    return out[::-1]


# adjacent 1-common edge-colorings

def verify_adjacent_1_common(g: Graph, f: Mapping) -> bool:
    col = {norm_edge(*e): c for e, c in f.items()}
    if any(e not in col for e in g.edges):
        raise PreconditionError("edge colouring not total")
    at = {x: [col[norm_edge(x, y)] for y in g.neighbors(x)] for x in g.vertices()}
    if any(len(set(cs)) != len(cs) for cs in at.values()):
        return False
    inter = {}
    for u, v in g.edges:
        s = set(at[u]) & set(at[v])
        if len(s) != 1:
            return False
        inter[(u, v)] = s
    for e1, e2 in combinations(g.edges, 2):
        if set(e1) & set(e2) and inter[e1] == inter[e2]:
            return False
    return True


def conflict_graph(g: Graph) -> Graph:
    """Edges of g as vertices; two conflict when adjacent or joined by an edge."""
    idx = g.edge_index()
    pairs = []
    for (i, e1), (j, e2) in combinations(enumerate(g.edges), 2):
        if set(e1) & set(e2) or any(g.has_edge(a, b) for a in e1 for b in e2):
            pairs.append((i, j))
    del idx
    return Graph(g.q, pairs)


def chi_set_prime_exact(g: Graph) -> int:
    if g.q > CHI_SET_CAP:
        raise CapExceeded("chi'_set exact search", g.q, CHI_SET_CAP)
    return chromatic_number(conflict_graph(g))


def chi_set_prime(g: Graph) -> int:
    """Closed forms for complete graphs and trees, exact search otherwise."""
    if g.q == 0:
        return 0
    if g.q == g.p * (g.p - 1) // 2:
        return g.q
    if g.is_tree():
        return max(g.degree(u) + g.degree(v) - 1 for u, v in g.edges)
    return chi_set_prime_exact(g)


def derive_edge_coloring(g: Graph, sc: SetColoring) -> Dict[Edge, int]:
    sc.check_shape(g)
    vs = sc.vertex
    for x in g.vertices():
        if len(vs[x]) < g.degree(x):
            raise PreconditionError(f"|F({x})| < deg({x})")
    out = {}
    for u, v in g.edges:
        s = vs[u] & vs[v]
        if len(s) != 1:
            raise PreconditionError(f"edge ({u},{v}) has |F(u)&F(v)| = {len(s)}")
        out[(u, v)] = next(iter(s))
    for e1, e2 in combinations(g.edges, 2):
        if set(e1) & set(e2) and out[e1] == out[e2]:
            raise PreconditionError(f"adjacent edges {e1} {e2} share their intersection")
    return out


def is_proper_edge_coloring(g: Graph, col: Mapping[Edge, int]) -> bool:
    return all(col[e1] != col[e2] for e1, e2 in combinations(g.edges, 2) if set(e1) & set(e2))


# homomorphisms of set-coloured graphs

def set_colored_homomorphism(g: Graph, fg: SetColoring, h: Graph, fh: SetColoring, phi: Sequence[int]) -> bool:
    if not check_homomorphism(g, h, phi):
        raise PreconditionError("vertex map is not a graph homomorphism")
    want_v: Dict[int, frozenset] = {}
    for x in g.vertices():
        want_v[phi[x]] = want_v.get(phi[x], frozenset()) | fg.vertex[x]
    if any(fh.vertex[w] != s for w, s in want_v.items()):
        return False
    if fg.edge is not None and fh.edge is not None:
        want_e: Dict[Edge, frozenset] = {}
        for (u, v), s in fg.edge.items():
            e = norm_edge(phi[u], phi[v])
            want_e[e] = want_e.get(e, frozenset()) | s
        if any(fh.edge.get(e) != s for e, s in want_e.items()):
            return False
    return True


# pan-operation, set-set and compound colorings

SET_OPS = ("intersection", "union", "symmetric-difference", "group-add")


def set_op(op: str, a: frozenset, b: frozenset, modulus: Optional[int] = None) -> frozenset:
    if op == "intersection":
        return a & b
    if op == "union":
        return a | b
    if op == "symmetric-difference":
        return a ^ b
    if op == "group-add":
        if not modulus:
            raise PreconditionError("group-add needs a modulus")
        return frozenset((x + y) % modulus for x in a for y in b)
    raise PreconditionError(f"unsupported operation {op!r}")


@dataclass
class PanReport:
    ok: bool
    proper: bool
    c0: bool
    constraints: bool
    complete: bool
    failures: List[str] = field(default_factory=list)

    def __bool__(self):
        return self.ok


def verify_pan(g: Graph, sc: SetColoring, op: str = "intersection", modulus: Optional[int] = None,
               constraints: Sequence[Constraint] = ()) -> PanReport:
    """(i) F(uv) contains F(u) op F(v), non-empty; (ii) some listed constraint
    witnessed on every edge; (iii) every pair of vertex sets with non-empty
    op-result is joined by an edge."""
    sc.check_shape(g, need_edges=True)
    vs, es = sc.vertex, sc.edge
    fails = []
    proper = all(vs[u] != vs[v] for u, v in g.edges)
    if not proper:
        fails.append("adjacent vertices share a set")
    c0 = True
    for u, v in g.edges:
        r = set_op(op, vs[u], vs[v], modulus)
        if not r or not r <= es[(u, v)]:
            c0 = False
            fails.append(f"edge {(u, v)} fails F(uv) >= F(u) {op} F(v) != empty")
    cons = True
    if constraints:
        for u, v in g.edges:
            if not any(r.holds(a, b, c) for r in constraints for a in vs[u] for b in vs[v] for c in es[(u, v)]):
                cons = False
                fails.append(f"edge {(u, v)} has no constraint witness")
    joined = {frozenset((vs[u], vs[v])) for u, v in g.edges}
    distinct = sorted(set(vs), key=lambda s: sorted(s))
    complete = True
    for a, b in combinations(distinct, 2):
        if set_op(op, a, b, modulus) and frozenset((a, b)) not in joined:
            complete = False
            fails.append(f"sets {sorted(a)} and {sorted(b)} combine but are not joined")
    return PanReport(proper and c0 and cons and complete, proper, c0, cons, complete, fails)


@dataclass
class FamilyReport:
    ok: bool
    proper: bool
    superset: bool
    compound_intersected: bool
    failures: List[str] = field(default_factory=list)

    def __bool__(self):
        return self.ok


def _family(x: Iterable[Iterable[int]]) -> frozenset:
    return frozenset(fs(s) for s in x)


def verify_family_coloring(g: Graph, vertex: Sequence[Iterable[Iterable[int]]],
                           edge: Mapping, mode: str = "set-set") -> FamilyReport:
    """Vertex values are families of sets; each edge needs
    Gamma(uv) >= Gamma(u) & Gamma(v) != empty.  In compound mode every
    hyperedge of each family must be non-empty, and intersecting vertex
    families being joined is reported as the compound intersected-graph flag."""
    if len(vertex) != g.p:
        raise PreconditionError("vertex families not total")
    vf = [_family(x) for x in vertex]
    ef = {norm_edge(*e): _family(x) for e, x in edge.items()}
    fails = []
    if any(e not in ef for e in g.edges):
        raise PreconditionError("edge families not total")
    proper = all(vf[u] != vf[v] for u, v in g.edges)
    if not proper:
        fails.append("adjacent vertices carry equal families")
    sup = True
    for u, v in g.edges:
        common = vf[u] & vf[v]
        if not common or not common <= ef[(u, v)]:
            sup = False
            fails.append(f"edge {(u, v)}: families do not meet inside the edge value")
    if mode == "compound" and any(not s for fam in vf for s in fam):
        sup = False
        fails.append("empty hyperedge in a family")
    comp = all(g.has_edge(x, y) for x, y in combinations(range(g.p), 2) if vf[x] & vf[y])
    return FamilyReport(proper and sup, proper, sup, comp, fails)


def verify_pan_or_compound(g: Graph, sc, mode: str, op: str = "intersection",
                           modulus: Optional[int] = None, constraints: Sequence[Constraint] = ()):
    if mode == "pan-operation":
        return verify_pan(g, sc, op, modulus, constraints)
    if mode in ("set-set", "compound"):
        vertex, edge = sc
        return verify_family_coloring(g, vertex, edge, mode)
    raise PreconditionError(f"unknown mode {mode!r}")


# colour propagation through splitting and coinciding

def edge_split_colored(g: Graph, sc: SetColoring, u: int, v: int, u_keep=None, v_keep=None):
    """Esc rules: copies keep the vertex sets, moved edges keep their sets, both
    halves of uv carry F(uv)."""
    sc.check_shape(g, need_edges=True)
    h = split_edge(g, u, v, u_keep, v_keep)
    u2, v2 = g.p, g.p + 1
    vert = list(sc.vertex) + [sc.vertex[u], sc.vertex[v]]
    back = {u2: u, v2: v}
    edges = {}
    for a, b in h.edges:
        oa, ob = back.get(a, a), back.get(b, b)
        edges[(a, b)] = sc.edge[norm_edge(oa, ob)]
    return h, SetColoring(vert, edges, sc.constraints)


def _merge_coloring(g: Graph, sc: SetColoring, h: Graph, remap: Sequence[int]) -> SetColoring:
    vert = [frozenset() for _ in range(h.p)]
    for x in g.vertices():
        vert[remap[x]] = vert[remap[x]] | sc.vertex[x]
    edges = None
    if sc.edge is not None:
        edges = {}
        for (a, b), s in sc.edge.items():
            e = norm_edge(remap[a], remap[b])
            edges[e] = edges.get(e, frozenset()) | s
    return SetColoring(vert, edges, sc.constraints)


def edge_coincide_colored(g: Graph, sc: SetColoring, e1, e2):
    h, remap = coincide_edges(g, e1, e2)
    return h, _merge_coloring(g, sc, h, remap)


def vertex_coincide_colored(g: Graph, sc: SetColoring, u1: int, u2: int):
    h, remap = coincide_vertices(g, u1, u2)
    return h, _merge_coloring(g, sc, h, remap)


def vertex_split_colored(g: Graph, sc: SetColoring, w: int, part: Iterable[int], rule: str = "Vsc-4",
                         sets: Optional[Tuple[Iterable[int], Iterable[int]]] = None):
    """Split w; w keeps `part`, the new vertex the rest.  Vsc-4 copies F(w) to
    both; Vsc-5 takes a caller-chosen partition of F(w); Vsc-6 two proper
    subsets of F(w) that overlap and cover it."""
    h = split_vertex(g, w, part)
    fw = sc.vertex[w]
    if rule == "Vsc-4":
        s1, s2 = fw, fw
    elif rule in ("Vsc-5", "Vsc-6"):
        if sets is None:
            raise PreconditionError(f"{rule} needs the two child sets")
        s1, s2 = fs(sets[0]), fs(sets[1])
        if rule == "Vsc-5" and (s1 | s2 != fw or s1 & s2 or not s1 or not s2):
            raise PreconditionError("Vsc-5 needs a partition of F(w) into two non-empty sets")
        if rule == "Vsc-6" and (not s1 < fw or not s2 < fw or not s1 & s2 or s1 | s2 != fw):
            raise PreconditionError("Vsc-6 needs two overlapping proper subsets covering F(w)")
    else:
        raise PreconditionError(f"unknown rule {rule!r}")
    vert = list(sc.vertex)
    vert[w] = s1
    vert.append(s2)
    edges = None
    if sc.edge is not None:
        edges = {}
        for a, b in h.edges:
            oa = w if a == g.p else a
            ob = w if b == g.p else b
            edges[(a, b)] = sc.edge[norm_edge(oa, ob)]
    return h, SetColoring(vert, edges, sc.constraints)


def dc_compose(pieces: Sequence[Tuple[Graph, SetColoring]], glue: Sequence[Sequence[Tuple[int, int]]]):
    """Vertex-coincide pieces: each glue group lists (piece, vertex) pairs that
    become one vertex with the union of their sets; edges that end up parallel
    are edge-coincided with the union of their sets.  New vertices are
    numbered by the least (piece, vertex) in their group."""
    parent: Dict[Tuple[int, int], Tuple[int, int]] = {}

    def find(x):
        while parent.get(x, x) != x:
            x = parent[x]
        return x

    for grp in glue:
        grp = [tuple(x) for x in grp]
        for a in grp[1:]:
            ra, rb = find(a), find(grp[0])
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    nodes = [(i, x) for i, (g, _) in enumerate(pieces) for x in g.vertices()]
    reps = sorted({find(n) for n in nodes})
    rid = {r: k for k, r in enumerate(reps)}
    vid = {n: rid[find(n)] for n in nodes}
    vert = [frozenset() for _ in reps]
    edges: Dict[Edge, frozenset] = {}
    for i, (g, sc) in enumerate(pieces):
        for x in g.vertices():
            vert[vid[(i, x)]] |= sc.vertex[x]
        es = _edge_sets(g, sc)
        for a, b in g.edges:
            na, nb_ = vid[(i, a)], vid[(i, b)]
            if na == nb_:
                raise PreconditionError("glue would create a loop")
            e = norm_edge(na, nb_)
            edges[e] = edges.get(e, frozenset()) | es[(a, b)]
    h = Graph(len(reps), list(edges))
    sc = SetColoring(vert, edges, ("intersection-c0",))
    return h, sc, verify_intersected(h, sc)


def split_coincide_set_colored(g: Graph, sc: SetColoring, action: str, **kw):
    """Dispatch the colour-propagating structural operations.  Returns
    (graph, colouring, intersected report)."""
    if action == "edge-split":
        h, out = edge_split_colored(g, sc, **kw)
    elif action == "edge-coincide":
        h, out = edge_coincide_colored(g, sc, **kw)
    elif action == "vertex-split":
        h, out = vertex_split_colored(g, sc, **kw)
    elif action == "vertex-coincide":
        h, out = vertex_coincide_colored(g, sc, **kw)
    elif action == "dc-compose":
        return dc_compose(kw["pieces"], kw["glue"])
    else:
        raise PreconditionError(f"unknown action {action!r}")
    if out.edge is None:
        out = out.with_intersection_edges(h)
    return h, out, verify_intersected(h, out)


# hypermatchings carried by trees

def bipartition_families(t: Graph, sc: SetColoring) -> Tuple[List[frozenset], List[frozenset]]:
    bp = t.bipartition()
    if bp is None:
        raise PreconditionError("graph is not bipartite")
    return [sc.vertex[x] for x in bp[0]], [sc.vertex[x] for x in bp[1]]


def is_perfect_hypermatching(family: Sequence[frozenset], ground: Iterable[int]) -> bool:
    total = sum(len(s) for s in family)
    union = set().union(*family) if family else set()
    return total == len(union) and union == set(ground) and all(family)


def inductive_hypermatching(t: Graph, order: Optional[Sequence[int]] = None):
    """Grow the tree one leaf at a time, giving the k-th new edge label k, and
    track an independent set X whose vertex sets partition the labels.

    Returns (coloring, X).  A new leaf u at v: if v is in X, v's set gains the
    new label; otherwise u joins X.  In both cases v's set gains the label so
    F(x) stays the set of incident edge labels.
    """
    _need_tree(t)
    if t.q == 0:
        raise PreconditionError("tree needs at least one edge")
    # build order: start from a centre of a star piece, add leaves in BFS order
    root = order[0] if order else 0
    dist = t.distances_from(root)
    seq = list(order) if order else sorted(t.vertices(), key=lambda x: (dist[x], x))
    pos = {x: i for i, x in enumerate(seq)}
    label: Dict[Edge, int] = {}
    xs = {root}
    sets: Dict[int, set] = {root: set()}
    for k, u in enumerate(seq[1:], start=1):
        v = min((y for y in t.neighbors(u) if pos[y] < pos[u]), key=lambda y: pos[y])
        label[norm_edge(u, v)] = k
        sets[u] = {k}
        sets[v].add(k)
        if v not in xs:
            xs.add(u)
    sc = edge_label_sets(t, label)
    return sc, sorted(xs)
