"""Topcode-matrices: numeric, set-type, string-type and nested (graph,
matrix, hypergraph) flavors, plus number-based string generation."""
from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from itertools import permutations
from math import factorial, prod
from typing import Dict, List, Optional, Sequence, Tuple

from .coloring import SetColoring
from .errors import PreconditionError
from .graph_core import Graph, norm_edge
from .labelings import Labeling


@dataclass(frozen=True)
class TopcodeMatrix:
    """Rows X, E, Y; column i belongs to edge i."""
    x: Tuple[int, ...]
    e: Tuple[int, ...]
    y: Tuple[int, ...]

    def __post_init__(self):
        if not (len(self.x) == len(self.e) == len(self.y)):
            raise PreconditionError("Topcode-matrix rows differ in length")
        if any(v < 0 for v in self.x + self.e + self.y):
            raise PreconditionError("Topcode-matrix entries must be non-negative")

    @property
    def q(self) -> int:
        return len(self.x)

    def rows(self) -> List[List[int]]:
        return [list(self.x), list(self.e), list(self.y)]

    def columns(self) -> List[Tuple[int, int, int]]:
        return list(zip(self.x, self.e, self.y))

    def entries(self) -> List[int]:
        return [v for col in self.columns() for v in col]


@dataclass(frozen=True)
class SetTopcodeMatrix:
    x: Tuple[frozenset, ...]
    e: Tuple[frozenset, ...]
    y: Tuple[frozenset, ...]

    def __post_init__(self):
        if not (len(self.x) == len(self.e) == len(self.y)):
            raise PreconditionError("Topcode-matrix rows differ in length")

    @property
    def q(self) -> int:
        return len(self.x)

    def rows(self) -> List[List[List[int]]]:
        return [[sorted(s) for s in r] for r in (self.x, self.e, self.y)]

    def columns(self):
        return list(zip(self.x, self.e, self.y))

    def column_ok(self, i: int) -> bool:
        inter = self.x[i] & self.y[i]
        return bool(inter) and inter <= self.e[i]


def _orient(g: Graph, edge_order: Optional[Sequence[Sequence[int]]]) -> List[Tuple[int, int]]:
    if edge_order is None:
        return list(g.edges)
    cols = [(int(a), int(b)) for a, b in edge_order]
    if sorted(norm_edge(a, b) for a, b in cols) != sorted(g.edges):
        raise PreconditionError("edge order must list every edge exactly once")
    return cols


def from_labeled_graph(g: Graph, f: Labeling, edge_order=None) -> TopcodeMatrix:
    """Column i = (f(x_i), f(x_i y_i), f(y_i)).  `edge_order` lists oriented
    pairs (x_i, y_i); the default is the sorted edge list with x_i < y_i."""
    if len(f.vertex) != g.p or f.edge is None or any(e not in f.edge for e in g.edges):
        raise PreconditionError("labeling must give every vertex and every edge a value")
    cols = _orient(g, edge_order)
    return TopcodeMatrix(tuple(f.vertex[a] for a, _ in cols),
                         tuple(f.edge[norm_edge(a, b)] for a, b in cols),
                         tuple(f.vertex[b] for _, b in cols))


def with_difference_edges(f: Labeling, g: Graph) -> Labeling:
    return Labeling(f.vertex, {(a, b): abs(f.vertex[a] - f.vertex[b]) for a, b in g.edges})


def to_strings(t: TopcodeMatrix, mode: str = "canonical", seed: Optional[int] = None, count: int = 1,
               sep: str = "") -> List[str]:
    """canonical: x1 e1 y1 x2 ... concatenated.  seeded: `count` readings of
    random permutations of the 3q entries drawn from Random(seed)."""
    ent = t.entries()
    if mode == "canonical":
        return [sep.join(str(v) for v in ent)]
    if mode == "seeded":
        rng = random.Random(seed)
        out = []
        for _ in range(count):
            perm = ent[:]
            rng.shuffle(perm)
            out.append(sep.join(str(v) for v in perm))
        return out
    raise PreconditionError(f"unknown mode {mode!r}")


def digit_multiset(values) -> Counter:
    """Digits of every entry (for ints) or of a string."""
    if isinstance(values, str):
        return Counter(values)
    return Counter("".join(str(v) for v in values))


def is_reading_of(s: str, t: TopcodeMatrix) -> bool:
    return digit_multiset(s) == digit_multiset(t.entries())


def string_count(t: TopcodeMatrix) -> int:
    """Number of orderings of the 3q entries."""
    return factorial(3 * t.q)


def set_string_count(s: SetTopcodeMatrix) -> Tuple[int, int]:
    """(M(ABC), (3q)! * M(ABC)) where M(ABC) is the product of |entry|!."""
    m = prod(factorial(len(v)) for row in (s.x, s.e, s.y) for v in row)
    return m, factorial(3 * s.q) * m


def from_set_colored_graph(g: Graph, sc: SetColoring, edge_order=None, constraints=None) -> SetTopcodeMatrix:
    from .setcolor import C0, verify_intersected
    sc.check_shape(g, need_edges=True)
    rep = verify_intersected(g, sc, constraints if constraints is not None else (C0,))
    if not rep.ok:
        raise PreconditionError(f"set-colouring fails the intersection check on {rep.c0_failures}")
    cols = _orient(g, edge_order)
    return SetTopcodeMatrix(tuple(sc.vertex[a] for a, _ in cols),
                            tuple(sc.edge[norm_edge(a, b)] for a, b in cols),
                            tuple(sc.vertex[b] for _, b in cols))


def string_type(s: SetTopcodeMatrix, seed: Optional[int] = None, sep: str = "") -> List[List[str]]:
    """Replace each set entry by a seeded random ordering of its elements."""
    rng = random.Random(seed)
    out = []
    for row in (s.x, s.e, s.y):
        r = []
        for st in row:
            items = sorted(st)
            rng.shuffle(items)
            r.append(sep.join(str(v) for v in items))
        out.append(r)
    return out


def entry_readings(st: frozenset, sep: str = "") -> List[str]:
    """All orderings of one set entry, as strings."""
    return sorted({sep.join(str(v) for v in p) for p in permutations(sorted(st))})


# nested flavors

NESTED_KINDS = ("graph", "matrix", "hypergraph")


@dataclass(frozen=True)
class NestedTopcodeMatrix:
    kind: str
    grid: Tuple[Tuple[int, ...], Tuple[int, ...], Tuple[int, ...]]
    registry: Tuple[object, ...]

    def entry(self, row: int, col: int):
        return self.registry[self.grid[row][col]]

    @property
    def q(self) -> int:
        return len(self.grid[0])


def _register(reg: List, index: Dict, key, value) -> int:
    if key not in index:
        index[key] = len(reg)
        reg.append(value)
    return index[key]


def nested(kind: str, j: Graph, assignment, group=None, zero: Optional[int] = None,
           edge_order=None) -> NestedTopcodeMatrix:
    """Graph kind: `assignment` maps vertices and edges of J to group element
    indices, with phi(x) != phi(y) and phi(xy) = phi(x) (+)_zero phi(y); the
    registry holds element indices.  Matrix kind: the same grid with each
    element replaced by its own Topcode-matrix.  Hypergraph kind:
    `assignment` = (vertex families, edge families or None), a verified
    compound set-colouring; missing edge families default to the
    intersection of the end families."""
    if kind not in NESTED_KINDS:
        raise PreconditionError(f"unknown nested kind {kind!r}")
    cols = _orient(j, edge_order)
    reg: List = []
    index: Dict = {}
    if kind in ("graph", "matrix"):
        from .groups import add
        if group is None or zero is None:
            raise PreconditionError("graph/matrix kind needs a group and a zero")
        phi = dict(assignment)
        vphi = {x: phi[x] for x in j.vertices()}
        ephi = {}
        for a, b in cols:
            e = norm_edge(a, b)
            val = phi.get(e, phi.get((b, a), phi.get((a, b))))
            if val is None:
                raise PreconditionError(f"edge {e} has no group element")
            if vphi[a] == vphi[b]:
                raise PreconditionError(f"edge {e} joins equal elements")
            want = add(group, vphi[a], vphi[b], zero)
            if val != want:
                raise PreconditionError(f"edge {e} carries G{val}, the group law gives G{want}")
            ephi[e] = val

        def value(i):
            if kind == "graph":
                return i
            el = group.coloring(i)
            if group.flavor == "set-colored":
                sc = el if el.edge is not None else el.with_intersection_edges(group.graph)
                return from_set_colored_graph(group.graph, sc)
            return from_labeled_graph(group.graph, el)

        rows = ([vphi[a] for a, _ in cols], [ephi[norm_edge(a, b)] for a, b in cols], [vphi[b] for _, b in cols])
        grid = tuple(tuple(_register(reg, index, i, value(i)) for i in r) for r in rows)
        return NestedTopcodeMatrix(kind, grid, tuple(reg))
    from .setcolor import _family, verify_family_coloring
    vertex, edge = assignment
    vf = [_family(x) for x in vertex]
    if edge is None:
        edge = {e: vf[e[0]] & vf[e[1]] for e in j.edges}
    rep = verify_family_coloring(j, vertex, edge, "compound")
    if not rep.ok:
        raise PreconditionError("; ".join(rep.failures))
    ef = {norm_edge(*e): _family(x) for e, x in edge.items()}
    rows = ([vf[a] for a, _ in cols], [ef[norm_edge(a, b)] for a, b in cols], [vf[b] for _, b in cols])
    grid = tuple(tuple(_register(reg, index, fam, fam) for fam in r) for r in rows)
    return NestedTopcodeMatrix(kind, grid, tuple(reg))
