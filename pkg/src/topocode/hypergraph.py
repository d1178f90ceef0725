"""Finite hypergraphs (ground set plus a family of distinct non-empty subsets)
and the procedures that read them through their intersected-graphs.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .coloring import SetColoring
from .errors import CapExceeded, PreconditionError
from .graph_core import Graph, _iter_hamilton, find_isomorphism, min_vertex_cut

MATCHING_CAP = 24
HAMILTON_CAP = 16
CONNECTIVITY_CAP = 16
CHROMATIC_CAP = 12

HEdge = Tuple[int, ...]


class HypergraphError(PreconditionError):
    def __init__(self, problems: List[str]):
        super().__init__("; ".join(problems))
        self.problems = problems


@dataclass(frozen=True)
class Hypergraph:
    ground: Tuple[int, ...]
    edges: Tuple[HEdge, ...]

    @property
    def order(self) -> int:
        return len(self.ground)

    @property
    def size(self) -> int:
        return len(self.edges)

    def sets(self) -> List[frozenset]:
        return [frozenset(e) for e in self.edges]

    def index(self, e: Iterable[int]) -> int:
        return self.edges.index(tuple(sorted(e)))


def _canon(e: Iterable[int]) -> HEdge:
    return tuple(sorted(int(x) for x in e))


def validate(ground: Iterable[int], family: Iterable[Iterable[int]]) -> Hypergraph:
    """Check the hypergraph invariants and return the normalised value.

    Hyperedges are stored sorted and the family is sorted lexicographically.
    Every violated invariant is listed in the raised error.
    """
    lam = sorted({int(x) for x in ground})
    problems = []
    edges = []
    seen = {}
    for i, e in enumerate(family):
        ce = _canon(e)
        if len(set(ce)) != len(ce):
            problems.append(f"hyperedge #{i} lists a vertex twice")
            ce = tuple(sorted(set(ce)))
        if not ce:
            problems.append(f"hyperedge #{i} is empty")
            continue
        if ce in seen:
            problems.append(f"hyperedge #{i} {list(ce)} duplicates hyperedge #{seen[ce]}")
            continue
        seen[ce] = i
        edges.append(ce)
    union = set()
    for e in edges:
        union |= set(e)
    if union != set(lam):
        extra = sorted(union - set(lam))
        missing = sorted(set(lam) - union)
        if extra:
            problems.append(f"hyperedges use vertices {extra} outside the ground set")
        if missing:
            problems.append(f"ground vertices {missing} lie in no hyperedge")
    if problems:
        raise HypergraphError(problems)
    return Hypergraph(tuple(lam), tuple(sorted(edges)))


def from_family(family: Iterable[Iterable[int]]) -> Hypergraph:
    family = [list(e) for e in family]
    ground = set()
    for e in family:
        ground |= set(e)
    return validate(ground, family)


# reduction, dual, uniformity, ears

def graham_reduction(h: Hypergraph) -> List[HEdge]:
    """Repeat GR-1 (drop vertices in exactly one hyperedge) and GR-2 (drop a
    hyperedge contained in another) until nothing changes."""
    fam = [set(e) for e in h.edges]
    while True:
        changed = False
        count: Dict[int, int] = {}
        for e in fam:
            for x in e:
                count[x] = count.get(x, 0) + 1
        lone = {x for x, c in count.items() if c == 1}
        if lone:
            fam = [e - lone for e in fam]
            changed = True
        fam = [e for e in fam if e]
        keep = []
        for i, e in enumerate(fam):
            covered = any(
                e <= f and (e != f or j < i)
                for j, f in enumerate(fam) if j != i)
            if covered:
                changed = True
            else:
                keep.append(e)
        fam = keep
        if not changed:
            return sorted(_canon(e) for e in fam)


def dual_family(h: Hypergraph) -> List[HEdge]:
    """X_j = {i : x_j in e_i} for each ground vertex x_j, hyperedges indexed in stored order."""
    return [tuple(i for i, e in enumerate(h.edges) if x in e) for x in h.ground]


def dual(h: Hypergraph) -> Hypergraph:
    return validate(range(h.size), dual_family(h))


def uniformity(h: Hypergraph) -> Optional[int]:
    sizes = {len(e) for e in h.edges}
    return sizes.pop() if len(sizes) == 1 else None


def vertex_degrees(h: Hypergraph) -> Dict[int, int]:
    deg = {x: 0 for x in h.ground}
    for e in h.edges:
        for x in e:
            deg[x] += 1
    return deg


def isolated_vertices(h: Hypergraph) -> List[int]:
    return sorted(x for x, d in vertex_degrees(h).items() if d == 1)


def ears(h: Hypergraph) -> List[HEdge]:
    sets = h.sets()
    out = []
    for i, e in enumerate(sets):
        others = [f for j, f in enumerate(sets) if j != i]
        if all(not (e & f) for f in others):
            out.append(h.edges[i])
            continue
        rest = set().union(*others) if others else set()
        # clause (ii): some other hyperedge e* leaves only private vertices of e
        if any(not ((e - f) & rest) for f in others):
            out.append(h.edges[i])
    return out


def is_irreducible(h: Hypergraph) -> bool:
    sets = h.sets()
    return not any(a <= b for i, a in enumerate(sets) for j, b in enumerate(sets) if i != j)


@dataclass
class StructureReport:
    ears: List[HEdge]
    isolated: List[int]
    irreducible: bool
    hyperdiameter: Optional[int]


def hyperdiameter(h: Hypergraph) -> Optional[int]:
    """Diameter of the intersected-graph, defined only for connected ear-free families."""
    if ears(h):
        return None
    g, _ = intersected_graph(h)
    if not g.is_connected():
        return None
    return g.diameter()


def structure_report(h: Hypergraph) -> StructureReport:
    return StructureReport(ears(h), isolated_vertices(h), is_irreducible(h), hyperdiameter(h))


# matchings and degrees

def perfect_hypermatchings(h: Hypergraph) -> List[List[HEdge]]:
    """All exact covers of the ground set, each sorted, the list sorted."""
    if h.size > MATCHING_CAP:
        raise CapExceeded("perfect_hypermatchings", h.size, MATCHING_CAP)
    sets = h.sets()
    holders = {x: [i for i, e in enumerate(sets) if x in e] for x in h.ground}
    out = []
    chosen: List[int] = []

    def rec(uncovered: frozenset, blocked: frozenset):
        if not uncovered:
            out.append(sorted(h.edges[i] for i in chosen))
            return
        # column with fewest usable rows
        opts = None
        for x in sorted(uncovered):
            rows = [i for i in holders[x] if i not in blocked and sets[i] <= uncovered]
            if opts is None or len(rows) < len(opts):
                opts = rows
                if not rows:
                    return
        for i in opts:
            chosen.append(i)
            rec(uncovered - sets[i], blocked | {i})
            chosen.pop()

    rec(frozenset(h.ground), frozenset())
    return sorted(out)


def hyperedge_degrees(h: Hypergraph) -> Dict[HEdge, int]:
    sets = h.sets()
    return {h.edges[i]: sum(1 for j in range(len(sets)) if j != i and sets[i] & sets[j])
            for i in range(len(sets))}


# intersected-graph and what it carries

def intersected_graph(h: Hypergraph, order: Optional[Sequence[int]] = None) -> Tuple[Graph, SetColoring]:
    """One vertex per hyperedge (vertex i carries hyperedge order[i]); edges join
    intersecting hyperedges and are coloured with the intersection."""
    idx = list(order) if order is not None else list(range(h.size))
    sets = [frozenset(h.edges[i]) for i in idx]
    edges = [(a, b) for a, b in combinations(range(len(sets)), 2) if sets[a] & sets[b]]
    g = Graph(len(sets), edges)
    return g, SetColoring(sets, {e: sets[e[0]] & sets[e[1]] for e in edges}, ("intersection-c0",))


def hyperedge_hamilton_cycle(h: Hypergraph) -> Optional[List[HEdge]]:
    """A cycle through every hyperedge with consecutive ones intersecting; no
    member may be an ear, so families with ears have none."""
    if h.size > HAMILTON_CAP:
        raise CapExceeded("hyperedge_hamilton_cycle", h.size, HAMILTON_CAP)
    if ears(h):
        return None
    g, _ = intersected_graph(h)
    for cyc in _iter_hamilton(g):
        return [h.edges[i] for i in cyc]
    return None


def is_hyperedge_cycle(h: Hypergraph, seq: Sequence[Iterable[int]]) -> bool:
    seq = [frozenset(e) for e in seq]
    if len(seq) < 3 or len(set(seq)) != len(seq):
        return False
    known = set(h.sets())
    bad = {frozenset(e) for e in ears(h)}
    if any(e not in known or e in bad for e in seq):
        return False
    return all(seq[i] & seq[(i + 1) % len(seq)] for i in range(len(seq)))


@dataclass
class ConnectivityReport:
    value: int
    cut: List[HEdge]


def hyperedge_connectivity(h: Hypergraph) -> ConnectivityReport:
    if h.size > CONNECTIVITY_CAP:
        raise CapExceeded("hyperedge_connectivity", h.size, CONNECTIVITY_CAP)
    g, _ = intersected_graph(h)
    if not g.is_connected():
        raise PreconditionError("intersected-graph is disconnected")
    k, cut = min_vertex_cut(g)
    return ConnectivityReport(k, [h.edges[i] for i in cut])


def chromatic_number(g: Graph) -> int:
    """Exact chromatic number by backtracking with increasing k."""
    if g.p == 0:
        return 0
    order = sorted(g.vertices(), key=lambda x: (-g.degree(x), x))
    for k in range(1, g.p + 1):
        col = [-1] * g.p

        def rec(i):
            if i == len(order):
                return True
            x = order[i]
            seen = {col[y] for y in g.neighbors(x)}
            top = max(col) + 1
            for c in range(min(k, top + 1)):
                if c not in seen:
                    col[x] = c
                    if rec(i + 1):
                        return True
                    col[x] = -1
            return False

        if rec(0):
            return k
    return g.p


def hypervertex_chromatic(h: Hypergraph) -> int:
    """Least k colouring the ground set so no hyperedge of size >= 2 is monochromatic."""
    big = [frozenset(e) for e in h.edges if len(e) >= 2]
    if not h.ground:
        return 0
    if not big:
        return 1
    verts = list(h.ground)
    pos = {x: i for i, x in enumerate(verts)}
    # a hyperedge is checked once its last vertex is coloured
    closing: Dict[int, List[frozenset]] = {}
    for e in big:
        closing.setdefault(max(pos[x] for x in e), []).append(e)
    for k in range(2, len(verts) + 1):
        col: Dict[int, int] = {}

        def rec(i):
            if i == len(verts):
                return True
            top = max(col.values(), default=-1) + 1
            for c in range(min(k, top + 1)):
                col[verts[i]] = c
                if all(len({col[x] for x in e}) > 1 for e in closing.get(i, [])):
                    if rec(i + 1):
                        return True
            del col[verts[i]]
            return False

        if rec(0):
            return k
    return len(verts)


@dataclass
class HyperTotalReport:
    ok: bool
    edge_condition: bool
    vertex_condition: bool
    bound: Optional[Dict[str, int]] = None
    bound_holds: Optional[bool] = None

    def __bool__(self):
        return self.ok


def hyper_total_verify(h: Hypergraph, edge_colors: Mapping[HEdge, int], vertex_colors: Mapping[int, int],
                       a: int, b: int, hyperedge_coloring: Optional[Mapping[HEdge, int]] = None) -> HyperTotalReport:
    """Check (i) hyperedge colours in [1,b], intersecting ones distinct, and
    (ii) vertex colours in [a,b], each hyperedge of size >= 2 not monochromatic.

    With a hyperedge colouring phi, also report whether its largest colour M
    lies in [Delta, Delta+1], Delta the largest neighbourhood size."""
    sets = h.sets()
    th = {tuple(sorted(k)): v for k, v in edge_colors.items()}
    e_ok = all(e in th and 1 <= th[e] <= b for e in h.edges) and all(
        th[h.edges[i]] != th[h.edges[j]]
        for i, j in combinations(range(h.size), 2) if sets[i] & sets[j])
    v_ok = all(x in vertex_colors and a <= vertex_colors[x] <= b for x in h.ground) and all(
        len({vertex_colors[x] for x in e}) > 1 for e in h.edges if len(e) >= 2)
    rep = HyperTotalReport(e_ok and v_ok, e_ok, v_ok)
    if hyperedge_coloring is not None:
        phi = {tuple(sorted(k)): v for k, v in hyperedge_coloring.items()}
        nbhd = [[j for j in range(h.size) if j != i and sets[i] & sets[j]] for i in range(h.size)]
        delta = max((len(n) for n in nbhd), default=0)
        proper = all(len({phi[h.edges[j]] for j in n}) == len(n) for n in nbhd)
        m = max(phi.values(), default=0)
        rep.bound = {"Delta": delta, "M": m, "proper": int(proper)}
        rep.bound_holds = delta <= m <= delta + 1
    return rep


def chromatic(h: Hypergraph, kind: str):
    if kind == "hyperedge-index":
        if h.size > CHROMATIC_CAP:
            raise CapExceeded("hyperedge chromatic index", h.size, CHROMATIC_CAP)
        return chromatic_number(intersected_graph(h)[0])
    if kind == "hypervertex":
        if h.order > 2 * CHROMATIC_CAP:
            raise CapExceeded("hypervertex chromatic number", h.order, 2 * CHROMATIC_CAP)
        return hypervertex_chromatic(h)
    raise PreconditionError(f"unknown chromatic kind {kind!r}; use hyper_total_verify for hyper-total")


# set-decrease / set-increase and combinations

def set_adjust(h: Hypergraph, xs: Sequence[Iterable[int]], assignment: Mapping, mode: str) -> Hypergraph:
    """E[\\]X (mode "decrease") or E[u]X (mode "increase").

    `assignment` maps a hyperedge (as a set) to an index into `xs`, or to None
    to leave it unchanged; unlisted hyperedges stay unchanged.  At least one
    hyperedge must change and the result must still be a hypergraph on the
    ground set (grown by any new vertices when increasing).
    """
    xsets = [frozenset(x) for x in xs]
    amap = {}
    for k, v in assignment.items():
        ck = _canon(k)
        if ck not in h.edges:
            raise PreconditionError(f"{list(ck)} is not a hyperedge")
        if v is not None and not (0 <= v < len(xsets)):
            raise PreconditionError(f"assignment index {v} out of range")
        amap[ck] = v
    out = []
    changed = False
    for e in h.edges:
        j = amap.get(e)
        s = set(e)
        if j is not None:
            s = s - xsets[j] if mode == "decrease" else s | xsets[j]
        elif mode not in ("decrease", "increase"):
            raise PreconditionError(f"unknown mode {mode!r}")
        if tuple(sorted(s)) != e:
            changed = True
        out.append(s)
    if mode not in ("decrease", "increase"):
        raise PreconditionError(f"unknown mode {mode!r}")
    if not changed:
        raise PreconditionError("no hyperedge changed")
    # increasing may bring in new vertices; decreasing must keep the ground set
    ground = set(h.ground).union(*out) if mode == "increase" else h.ground
    try:
        return validate(ground, out)
    except HypergraphError as err:
        raise HypergraphError([f"not {mode}-able: " + p for p in err.problems]) from None


def coincide_hypergraphs(h1: Hypergraph, h2: Hypergraph) -> Hypergraph:
    return validate(set(h1.ground) | set(h2.ground), set(h1.edges) | set(h2.edges))


def adjacent_hypergraph(h: Hypergraph) -> Hypergraph:
    lam = set(h.ground)
    comp = []
    for e in h.edges:
        c = lam - set(e)
        if not c:
            raise PreconditionError(f"hyperedge {list(e)} equals the ground set; complement empty")
        comp.append(c)
    union = set().union(*comp)
    return validate(union, comp)


def hypergraph_isomorphism(h1: Hypergraph, h2: Hypergraph) -> Optional[Dict[int, int]]:
    """A ground-set bijection carrying the family of h1 onto that of h2."""
    if h1.order != h2.order or h1.size != h2.size:
        return None

    def incidence(h):
        pos = {x: i for i, x in enumerate(h.ground)}
        n = h.order
        g = Graph(n + h.size, [(pos[x], n + j) for j, e in enumerate(h.edges) for x in e])
        return g, [0] * n + [1] * h.size

    g1, c1 = incidence(h1)
    g2, c2 = incidence(h2)
    f = find_isomorphism(g1, g2, (c1, c2))
    if f is None:
        return None
    return {h1.ground[i]: h2.ground[f[i]] for i in range(h1.order)}
