"""Word-bounded samplers for graphic lattices: left folds of base graphs
under the edge-hamiltonian operations O1-O3 or under edge/vertex
coinciding of set-coloured intersected-graphs."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Dict, List, Optional, Sequence, Tuple

from .coloring import SetColoring
from .errors import CapExceeded, PreconditionError
from .graph_core import (Graph, coincide_vertices, cycle_edges, hamilton_cycles, is_edge_hamiltonian,
                         split_vertex)
from .hypergraph import Hypergraph, validate
from .setcolor import edge_coincide_colored, vertex_coincide_colored, verify_intersected

P_CAP = 64
HAM_OPS = ("O1", "O2", "O3")
COINCIDE_OPS = ("edge-coincide", "vertex-coincide")
KIND_OPS = {
    "edge-hamiltonian": HAM_OPS,
    "edge-coincided": ("edge-coincide",),
    "vertex-coincided": ("vertex-coincide",),
    "mixed": COINCIDE_OPS,
    "hypergraph": ("edge-coincide",),
}


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    return Graph(g1.p + g2.p, list(g1.edges) + [(a + g1.p, b + g1.p) for a, b in g2.edges])


def union_coloring(c1: SetColoring, c2: SetColoring, p1: int) -> SetColoring:
    edges = None
    if c1.edge is not None and c2.edge is not None:
        edges = dict(c1.edge)
        edges.update({(a + p1, b + p1): s for (a, b), s in c2.edge.items()})
    return SetColoring(list(c1.vertex) + list(c2.vertex), edges, c1.constraints)


# edge-hamiltonian splits

def vertex_splits(g: Graph, u: int) -> List[Tuple[int, ...]]:
    """Proper neighbour parts kept by u, one per unordered split (the part
    holding u's least neighbour)."""
    nb = sorted(g.neighbors(u))
    out = []
    for r in range(1, len(nb)):
        for part in combinations(nb, r):
            if part[0] == nb[0]:
                out.append(part)
    return out


def compatible_splits(g: Graph, u: int) -> List[Tuple[int, ...]]:
    """Splits of u such that every edge lies on a Hamilton cycle whose two
    edges at u fall on different sides.  Only these keep O1-O3 closed."""
    cycles = hamilton_cycles(g)
    out = []
    for part in vertex_splits(g, u):
        keep = set(part)
        covered = set()
        for cyc in cycles:
            i = cyc.index(u)
            a, b = cyc[i - 1], cyc[(i + 1) % len(cyc)]
            if (a in keep) != (b in keep):
                covered.update(cycle_edges(cyc))
        if covered == set(g.edges):
            out.append(part)
    return out


def ham_sites(g: Graph) -> List[Tuple[int, Tuple[int, ...]]]:
    return [(u, part) for u in g.vertices() for part in compatible_splits(g, u)]


def apply_op(g1: Graph, g2: Graph, op: str, sites, c1: Optional[SetColoring] = None,
             c2: Optional[SetColoring] = None):
    """Combine g1 and g2.  Returns (graph, colouring or None).

    O1-O3: sites = ((u, part_u), (v, part_v)); u keeps part_u as u' and its
    other neighbours go to u''.  O1 joins u'v' and u''v''; O2 coincides u'
    with v' and u'' with v''; O3 coincides u' with v' and joins u''v''.
    edge-coincide: sites = ((a, b), (c, d)), pairing a with c and b with d.
    vertex-coincide: sites = (x, y).  Ids of g2 are shifted by g1.p before
    merging; merged vertices keep the smaller id.
    """
    if op in HAM_OPS:
        (u, pu), (v, pv) = sites
        for g, x, part in ((g1, u, pu), (g2, v, pv)):
            nb = g.neighbors(x)
            if not set(part) or not set(part) < nb:
                raise PreconditionError(f"split of {x} needs a proper non-empty neighbour part")
        h1 = split_vertex(g1, u, pu)
        h2 = split_vertex(g2, v, pv)
        h = disjoint_union(h1, h2)
        u1, u2 = u, g1.p
        v1, v2 = h1.p + v, h1.p + g2.p
        if op == "O1":
            return Graph(h.p, list(h.edges) + [(u1, v1), (u2, v2)]), None
        if op == "O2":
            h, r = coincide_vertices(h, u1, v1)
            h, _ = coincide_vertices(h, r[u2], r[v2])
            return h, None
        h, r = coincide_vertices(h, u1, v1)
        return Graph(h.p, list(h.edges) + [(r[u2], r[v2])]), None
    if op not in COINCIDE_OPS:
        raise PreconditionError(f"unknown operation {op!r}")
    h = disjoint_union(g1, g2)
    col = None
    if c1 is not None and c2 is not None:
        col = union_coloring(c1, c2, g1.p)
    if op == "edge-coincide":
        (a, b), (c, d) = sites
        if not g1.has_edge(a, b) or not g2.has_edge(c, d):
            raise PreconditionError("edge-coincide site is not an edge")
        e1, e2 = (a, b), (c + g1.p, d + g1.p)
        if col is None:
            from .graph_core import coincide_edges
            return coincide_edges(h, e1, e2)[0], None
        return edge_coincide_colored(h, col, e1, e2)
    x, y = sites
    if not (0 <= x < g1.p and 0 <= y < g2.p):
        raise PreconditionError("vertex-coincide site out of range")
    if col is None:
        return coincide_vertices(h, x, y + g1.p)[0], None
    return vertex_coincide_colored(h, col, x, y + g1.p)


def legal_sites(g1: Graph, g2: Graph, op: str) -> List:
    """All legal sites for op in canonical order."""
    if op in HAM_OPS:
        return list(product(ham_sites(g1), ham_sites(g2)))
    if op == "edge-coincide":
        return [(e1, e2) for e1 in g1.edges for b in g2.edges for e2 in (b, b[::-1])]
    if op == "vertex-coincide":
        return [(x, y) for x in g1.vertices() for y in g2.vertices()]
    raise PreconditionError(f"unknown operation {op!r}")


# lattice words

@dataclass(frozen=True)
class LatticeBase:
    graphs: Tuple[Graph, ...]
    kind: str
    colorings: Optional[Tuple[SetColoring, ...]] = None

    def validate(self) -> None:
        if self.kind not in KIND_OPS:
            raise PreconditionError(f"unknown lattice kind {self.kind!r}")
        if not self.graphs:
            raise PreconditionError("empty base")
        if self.kind == "edge-hamiltonian":
            for i, g in enumerate(self.graphs):
                if not is_edge_hamiltonian(g):
                    raise PreconditionError(f"base {i} is not edge-hamiltonian")
        elif self.colorings is not None:
            if len(self.colorings) != len(self.graphs):
                raise PreconditionError("one colouring per base graph")
            for i, (g, c) in enumerate(zip(self.graphs, self.colorings)):
                if not verify_intersected(g, c).ok:
                    raise PreconditionError(f"base {i} colouring fails the intersection check")


@dataclass(frozen=True)
class LatticeWord:
    counts: Tuple[int, ...]
    seed: int = 0
    order: Optional[Tuple[int, ...]] = None
    ops: Optional[Tuple[str, ...]] = None
    sites: Optional[Tuple] = None

    def sequence(self) -> List[int]:
        if sum(self.counts) < 1 or any(a < 0 for a in self.counts):
            raise PreconditionError("coefficients must be non-negative with positive sum")
        seq = [i for i, a in enumerate(self.counts) for _ in range(a)]
        if self.order is not None:
            if sorted(self.order) != seq:
                raise PreconditionError("order must permute the word's multiset")
            seq = list(self.order)
        return seq


@dataclass
class Sample:
    graph: Graph
    coloring: Optional[SetColoring]
    trace: List[Dict] = field(default_factory=list)


def _norm_site(site):
    if isinstance(site, (list, tuple)):
        return tuple(_norm_site(s) for s in site)
    return site


def sample(base: LatticeBase, word: LatticeWord) -> Sample:
    """L_1 = T_1, L_k = op(L_{k-1}, T_k).  Ops and sites come from the word
    when given, otherwise uniformly from Random(seed) in canonical order."""
    base.validate()
    seq = word.sequence()
    if len(word.counts) != len(base.graphs):
        raise PreconditionError("one coefficient per base graph")
    total = sum(base.graphs[i].p for i in seq)
    if total > P_CAP:
        raise CapExceeded("lattice sample size", total, P_CAP)
    rng = random.Random(word.seed)
    allowed = KIND_OPS[base.kind]
    cols = base.colorings
    cur = base.graphs[seq[0]]
    col = cols[seq[0]] if cols else None
    trace = [{"step": 0, "base": seq[0]}]
    for step, bi in enumerate(seq[1:], start=1):
        g2 = base.graphs[bi]
        c2 = cols[bi] if cols else None
        if word.ops is not None:
            op = word.ops[step - 1]
            if op not in allowed:
                raise PreconditionError(f"operation {op} not allowed for {base.kind}")
        else:
            op = allowed[rng.randrange(len(allowed))]
        if word.sites is not None:
            site = _norm_site(word.sites[step - 1])
            if site not in legal_sites(cur, g2, op):
                raise PreconditionError(f"illegal site {site} at step {step}")
        else:
            options = legal_sites(cur, g2, op)
            if not options:
                raise PreconditionError(f"no legal site for {op} at step {step}")
            site = options[rng.randrange(len(options))]
        cur, col = apply_op(cur, g2, op, site, col, c2)
        trace.append({"step": step, "base": bi, "op": op, "sites": site})
    return Sample(cur, col, trace)


def replay_word(word: LatticeWord, trace: Sequence[Dict]) -> LatticeWord:
    """The explicit word that reproduces a trace."""
    steps = trace[1:]
    return LatticeWord(word.counts, word.seed, tuple(t["base"] for t in trace),
                       tuple(t["op"] for t in steps), tuple(_norm_site(t["sites"]) for t in steps))


@dataclass
class HyperElement:
    hypergraph: Hypergraph
    sample: Sample


def hypergraph_lattice_element(bases: Sequence[Hypergraph], word: LatticeWord, kind: str = "edge-coincided",
                               ) -> HyperElement:
    """Union of the used bases' ground sets and families, next to the fold of
    their intersected graphs."""
    from .hypergraph import intersected_graph
    seq = word.sequence()
    used = sorted(set(seq))
    ground = set()
    fam = []
    for i in used:
        ground |= set(bases[i].ground)
        for e in bases[i].edges:
            if e not in fam:
                fam.append(e)
    graphs, colorings = [], []
    for h in bases:
        g, sc = intersected_graph(h)
        graphs.append(g)
        colorings.append(sc)
    s = sample(LatticeBase(tuple(graphs), kind if kind != "hypergraph" else "edge-coincided", tuple(colorings)),
               word)
    return HyperElement(validate(sorted(ground), fam), s)


def enumerate_01(bases: Sequence[Hypergraph], kind: str = "edge-coincided", seed: int = 0):
    """Every {0,1} coefficient vector mapped to its element (None for the
    all-zero vector, which has no element).  2^m entries."""
    m = len(bases)
    out = {}
    for vec in product((0, 1), repeat=m):
        if sum(vec) == 0:
            out[vec] = None
            continue
        out[vec] = hypergraph_lattice_element(bases, LatticeWord(vec, seed), kind)
    return out


# edge-hamiltonian extensions of one graph

EXT_MODES = ("edge", "path", "clique")


def extension(g: Graph, u: int, part: Sequence[int], mode: str, length: int = 2, m: int = 3) -> Graph:
    """G^u split at u (u keeps `part`, u'' = p), then u' and u'' joined by an
    edge, by a path with `length` edges, or through a K_m whose two vertices
    are coincided with u' and u''."""
    h = split_vertex(g, u, part)
    a, b = u, g.p
    if mode == "edge":
        return Graph(h.p, list(h.edges) + [(a, b)])
    if mode == "path":
        if length < 2:
            raise PreconditionError("path needs at least two edges")
        inner = list(range(h.p, h.p + length - 1))
        chain = [a] + inner + [b]
        return Graph(h.p + length - 1, list(h.edges) + list(zip(chain, chain[1:])))
    if mode == "clique":
        if m < 2:
            raise PreconditionError("clique needs m >= 2")
        ids = [a, b] + list(range(h.p, h.p + m - 2))
        return Graph(h.p + m - 2, list(h.edges) + list(combinations(ids, 2)))
    raise PreconditionError(f"unknown mode {mode!r}")


@dataclass
class ExtensionReport:
    mode: str
    original: bool
    extended: bool
    per_split: Dict[Tuple[int, ...], bool]

    @property
    def equivalent(self) -> bool:
        return self.original == self.extended


def edge_hamiltonian_extension_check(g: Graph, u: int, mode: str, length: int = 2, m: int = 3) -> ExtensionReport:
    """Compare "g is edge-hamiltonian" with "some split of u makes the
    extension edge-hamiltonian"."""
    if mode not in EXT_MODES:
        raise PreconditionError(f"unknown mode {mode!r}")
    orig = bool(is_edge_hamiltonian(g))
    per = {part: bool(is_edge_hamiltonian(extension(g, u, part, mode, length, m)))
           for part in vertex_splits(g, u)}
    return ExtensionReport(mode, orig, any(per.values()), per)
