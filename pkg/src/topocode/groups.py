"""Every-zero graphic groups: copies of one coloured graph whose colours are
shifted by i (mod M), added pointwise with any element acting as zero.

Element i (1 <= i <= M) carries base + i (mod M) on every slot of the
flavor's domain; element M is the base reduced mod M.  Adding i and j with
zero k gives index i + j - k (mod M), mapped into [1, M].
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple, Union

import numpy as np

from .coloring import SetColoring
from .errors import CapExceeded, PreconditionError
from .graph_core import Graph
from .labelings import Labeling

FLAVORS = ("labeling", "total", "set-colored")
AXIOM_CAP = 64

# One slot per vertex (and per edge for the total and set-colored flavors).
# A set slot is a tuple in the base's sorted element order, so the r-th
# element of a slot can be matched across group elements.
Slots = Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True)
class GraphicGroup:
    graph: Graph
    base: Union[Labeling, SetColoring]
    flavor: str
    modulus: int
    elements: Tuple[Slots, ...]
    slot_names: Tuple[object, ...] = ()

    @property
    def n(self) -> int:
        return len(self.elements)

    def element(self, i: int) -> Slots:
        check_index(self, i)
        return self.elements[i - 1]

    def coloring(self, i: int):
        """Element i as a Labeling or SetColoring on the base graph."""
        sl = self.element(i)
        g = self.graph
        if self.flavor == "labeling":
            v = [s[0] for s in sl]
            return Labeling(v, {(a, b): abs(v[a] - v[b]) for a, b in g.edges})
        if self.flavor == "total":
            return Labeling([s[0] for s in sl[:g.p]], {e: sl[g.p + t][0] for t, e in enumerate(g.edges)})
        vert = [set(s) for s in sl[:g.p]]
        edge = None
        if len(sl) > g.p:
            edge = {e: set(sl[g.p + t]) for t, e in enumerate(g.edges)}
        return SetColoring(vert, edge, self.base.constraints)


def _base_slots(g: Graph, base, flavor: str) -> Tuple[Slots, Tuple]:
    if flavor == "labeling":
        if not isinstance(base, Labeling) or len(base.vertex) != g.p:
            raise PreconditionError("labeling flavor needs a vertex labeling of the graph")
        return tuple((x,) for x in base.vertex), tuple(g.vertices())
    if flavor == "total":
        if not isinstance(base, Labeling) or len(base.vertex) != g.p or base.edge is None \
                or any(e not in base.edge for e in g.edges):
            raise PreconditionError("total flavor needs vertex and edge values")
        return (tuple((x,) for x in base.vertex) + tuple((base.edge[e],) for e in g.edges),
                tuple(g.vertices()) + tuple(g.edges))
    if flavor == "set-colored":
        if not isinstance(base, SetColoring):
            raise PreconditionError("set-colored flavor needs a SetColoring")
        base.check_shape(g)
        if any(not s for s in base.vertex):
            raise PreconditionError("empty vertex set")
        slots = tuple(tuple(sorted(s)) for s in base.vertex)
        names: Tuple = tuple(g.vertices())
        if base.edge is not None:
            base.check_shape(g, need_edges=True)
            slots += tuple(tuple(sorted(base.edge[e])) for e in g.edges)
            names += tuple(g.edges)
        return slots, names
    raise PreconditionError(f"unknown flavor {flavor!r}")


def default_modulus(g: Graph, base, flavor: str) -> int:
    if flavor == "labeling":
        return g.q
    if flavor == "total":
        return g.p + g.q
    return max(base.ground())


def build_group(g: Graph, base, flavor: str, modulus: Optional[int] = None) -> GraphicGroup:
    """n = M shifted copies of `base`.  M defaults to q (labeling), p+q (total)
    or the largest colour of the base (set-colored)."""
    slots, names = _base_slots(g, base, flavor)
    m = default_modulus(g, base, flavor) if modulus is None else modulus
    if m < 1:
        raise PreconditionError("modulus must be positive")
    elems = tuple(tuple(tuple((x + i) % m for x in s) for s in slots) for i in range(1, m + 1))
    return GraphicGroup(g, base, flavor, m, elems, names)


def check_index(grp: GraphicGroup, i: int) -> None:
    if not (isinstance(i, (int, np.integer)) and 1 <= i <= grp.n):
        raise PreconditionError(f"index {i} outside [1, {grp.n}]")


def _wrap(x: int, m: int) -> int:
    r = x % m
    return r if r else m


def add(grp: GraphicGroup, i: int, j: int, k: int) -> int:
    """Index of G_i (+)_k G_j."""
    for x in (i, j, k):
        check_index(grp, x)
    return _wrap(i + j - k, grp.modulus)


def inverse(grp: GraphicGroup, i: int, k: int) -> int:
    """2k - i or M + 2k - i, whichever lies in [1, M]."""
    check_index(grp, i)
    check_index(grp, k)
    return _wrap(2 * k - i, grp.modulus)


def pointwise(grp: GraphicGroup, i: int, j: int, k: int) -> Slots:
    """The slot-by-slot combination b_i + b_j - b_k (mod M)."""
    a, b, c = grp.element(i), grp.element(j), grp.element(k)
    m = grp.modulus
    return tuple(tuple((x + y - z) % m for x, y, z in zip(sa, sb, sc)) for sa, sb, sc in zip(a, b, c))


@dataclass
class AxiomReport:
    zero: bool
    uniqueness: bool
    closure: bool
    inverse: bool
    associative: bool
    commutative: bool
    element_validity: Dict[int, bool] = field(default_factory=dict)
    failures: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all((self.zero, self.uniqueness, self.closure, self.inverse, self.associative, self.commutative))

    def __bool__(self):
        return self.ok


def _element_valid(grp: GraphicGroup, i: int) -> bool:
    g = grp.graph
    sl = grp.element(i)
    m = grp.modulus
    if grp.flavor == "labeling":
        return True
    if grp.flavor == "total":
        # magic modulo M with some constant k_i
        ks = {(sl[a][0] + sl[b][0] - sl[g.p + t][0]) % m for t, (a, b) in enumerate(g.edges)}
        return len(ks) <= 1
    if len(sl) == g.p:
        return True
    return all(set(sl[a]) & set(sl[b]) and set(sl[a]) & set(sl[b]) <= set(sl[g.p + t])
               for t, (a, b) in enumerate(g.edges))


def verify_axioms(grp: GraphicGroup) -> AxiomReport:
    """Exhaustive check of the group laws under every choice of zero.

    The sum table is built from pointwise arithmetic on the stored colourings
    and looked up among the elements, so a tampered element shows up as a
    closure or uniqueness failure.
    """
    n = grp.n
    if n > AXIOM_CAP:
        raise CapExceeded("verify_axioms", n, AXIOM_CAP)
    fails: List[str] = []
    where: Dict[Slots, List[int]] = {}
    for i in range(1, n + 1):
        where.setdefault(grp.element(i), []).append(i)
    unique = all(len(v) == 1 for v in where.values())
    if not unique:
        fails += [f"elements {v} coincide" for v in where.values() if len(v) > 1]
    table = np.zeros((n + 1, n + 1, n + 1), dtype=np.int64)
    closure = True
    for k in range(1, n + 1):
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                hit = where.get(pointwise(grp, i, j, k), [])
                if len(hit) != 1:
                    closure = closure and bool(hit)
                    if not hit:
                        fails.append(f"G{i} + G{j} (zero G{k}) is not in the group")
                    table[k, i, j] = 0
                else:
                    table[k, i, j] = hit[0]
                    if hit[0] != add(grp, i, j, k):
                        unique = False
                        fails.append(f"G{i} + G{j} (zero G{k}) lands on G{hit[0]}, index law gives "
                                     f"G{add(grp, i, j, k)}")
    idx = np.arange(1, n + 1)
    zero = inv = assoc = comm = True
    for k in range(1, n + 1):
        t = table[k]
        if not np.array_equal(t[idx, k], idx):
            zero = False
            fails.append(f"G{k} is not a zero")
        if not all((t[i, 1:] == k).any() for i in idx):
            inv = False
            fails.append(f"some element has no inverse for zero G{k}")
        sub = t[1:, 1:]
        if not np.array_equal(sub, sub.T):
            comm = False
            fails.append(f"not commutative for zero G{k}")
        if (sub == 0).any():
            assoc = False
            continue
        left = t[sub[:, :, None], idx[None, None, :]]
        right = t[idx[:, None, None], sub[None, :, :]]
        if not np.array_equal(left, right):
            assoc = False
            fails.append(f"not associative for zero G{k}")
    validity = {i: _element_valid(grp, i) for i in range(1, n + 1)}
    return AxiomReport(zero, unique, closure, inv, assoc, comm, validity, fails)


def to_json(grp: GraphicGroup) -> dict:
    from .codec import graph_to_json, labeling_to_json, setcoloring_to_json
    base = setcoloring_to_json(grp.base) if grp.flavor == "set-colored" else labeling_to_json(grp.base)
    return {"graph": graph_to_json(grp.graph), "base": base, "flavor": grp.flavor, "modulus": grp.modulus}
