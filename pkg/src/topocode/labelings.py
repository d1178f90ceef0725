"""Number-valued labelings: verifiers for the graceful family, the (k,d) total
colorings and a bounded backtracking search.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .errors import CapExceeded, PreconditionError
from .graph_core import Edge, Graph, norm_edge

SEARCH_CAP = 20

DIFF_KINDS = {
    "graceful", "set-ordered-graceful", "strongly-graceful", "set-ordered-strongly-graceful",
    "odd-graceful", "set-ordered-odd-graceful", "strongly-odd-graceful",
    "set-ordered-strongly-odd-graceful", "gracefully-total", "edge-odd-graceful",
}
KINDS = DIFF_KINDS | {"edge-magic-total", "felicitous", "edge-magic-graceful"}

# which B-conditions each graceful-family kind needs
_B_CONDITIONS = {
    "graceful": ("B-1", "B-2", "B-4"),
    "set-ordered-graceful": ("B-1", "B-2", "B-4", "B-6"),
    "strongly-graceful": ("B-1", "B-2", "B-4", "B-7"),
    "set-ordered-strongly-graceful": ("B-1", "B-2", "B-4", "B-6", "B-7"),
    "odd-graceful": ("B-1", "B-3", "B-5"),
    "set-ordered-odd-graceful": ("B-1", "B-3", "B-5", "B-6"),
    "strongly-odd-graceful": ("B-1", "B-3", "B-5", "B-8"),
    "set-ordered-strongly-odd-graceful": ("B-1", "B-3", "B-5", "B-6", "B-8"),
}


@dataclass(frozen=True)
class Labeling:
    vertex: Tuple[int, ...]
    edge: Optional[Dict[Edge, int]] = None

    def __init__(self, vertex: Sequence[int], edge: Optional[Mapping] = None):
        object.__setattr__(self, "vertex", tuple(int(x) for x in vertex))
        if edge is not None:
            edge = {norm_edge(*e): int(c) for e, c in edge.items()}
        object.__setattr__(self, "edge", edge)

    def __hash__(self):
        return hash((self.vertex, tuple(sorted(self.edge.items())) if self.edge else None))


@dataclass(frozen=True)
class LabelingKind:
    tag: str
    c: Optional[int] = None          # magic / difference constant
    eta: Optional[int] = None        # modulus for felicitous
    matching: Optional[Tuple[Edge, ...]] = None   # for B-7 / B-8
    part_x: Optional[Tuple[int, ...]] = None       # declared X side for B-6

    def __post_init__(self):
        if self.tag not in KINDS:
            raise PreconditionError(f"unknown labeling kind {self.tag!r}")
        needs_c = self.tag in ("edge-magic-total", "edge-magic-graceful")
        if needs_c and self.c is None:
            raise PreconditionError(f"kind {self.tag} needs the constant c")
        if not needs_c and self.c is not None:
            raise PreconditionError(f"kind {self.tag} takes no constant c")
        if self.eta is not None and self.tag != "felicitous":
            raise PreconditionError("modulus eta only applies to felicitous")
        if "strongly" in self.tag and self.matching is None:
            raise PreconditionError(f"kind {self.tag} needs a declared perfect matching")


@dataclass
class LabelingReport:
    ok: bool
    conditions: Dict[str, bool]
    edge_colors: Dict[Edge, int]
    violations: List[str] = field(default_factory=list)

    def __bool__(self):
        return self.ok


def odd_range(q: int) -> set:
    return set(range(1, 2 * q, 2))


def induced_edge_colors(g: Graph, f: Labeling, kind: LabelingKind) -> Dict[Edge, int]:
    v = f.vertex
    if kind.tag in DIFF_KINDS:
        return {(a, b): abs(v[a] - v[b]) for a, b in g.edges}
    if kind.tag == "felicitous":
        eta = kind.eta if kind.eta is not None else g.q
        return {(a, b): (v[a] + v[b]) % eta for a, b in g.edges}
    if f.edge is None:
        raise PreconditionError(f"kind {kind.tag} needs an explicit edge assignment")
    return dict(f.edge)


def _set_ordered(g: Graph, v: Sequence[int], part_x) -> bool:
    if part_x is not None:
        xs = set(part_x)
        ys = set(g.vertices()) - xs
        if any((a in xs) == (b in xs) for a, b in g.edges):
            return False
        sides = [(xs, ys)]
    else:
        bp = g.bipartition()
        if bp is None:
            return False
        sides = [(set(bp[0]), set(bp[1])), (set(bp[1]), set(bp[0]))]
    for xs, ys in sides:
        if not xs or not ys:
            continue
        if max(v[x] for x in xs) < min(v[y] for y in ys):
            return True
    return False


def _matching_sum(g: Graph, v, matching, total) -> bool:
    if not g.is_tree():
        return False
    covered = set()
    for a, b in matching:
        if not g.has_edge(a, b) or a in covered or b in covered:
            return False
        covered |= {a, b}
        if v[a] + v[b] != total:
            return False
    return len(covered) == g.p


def verify_labeling(g: Graph, f: Labeling, kind: LabelingKind) -> LabelingReport:
    if len(f.vertex) != g.p:
        raise PreconditionError("labeling is not total on V(G)")
    v = f.vertex
    q = g.q
    induced = induced_edge_colors(g, f, kind)
    cond: Dict[str, bool] = {}
    bad: List[str] = []
    if f.edge is not None and kind.tag in DIFF_KINDS | {"felicitous"}:
        clash = [e for e in g.edges if f.edge.get(e) != induced[e]]
        cond["edge-consistent"] = not clash
        bad += [f"edge {e} given {f.edge.get(e)} but induces {induced[e]}" for e in clash]
    ecol = sorted(induced.values())
    vset = set(v)
    if kind.tag in _B_CONDITIONS:
        for name in _B_CONDITIONS[kind.tag]:
            if name == "B-1":
                cond[name] = len(vset) == g.p
            elif name == "B-2":
                cond[name] = all(0 <= x <= q for x in v) and min(v, default=0) == 0
            elif name == "B-3":
                cond[name] = all(0 <= x <= 2 * q - 1 for x in v) and min(v, default=0) == 0
            elif name == "B-4":
                cond[name] = ecol == list(range(1, q + 1))
            elif name == "B-5":
                cond[name] = ecol == sorted(odd_range(q))
            elif name == "B-6":
                cond[name] = _set_ordered(g, v, kind.part_x)
            elif name == "B-7":
                cond[name] = _matching_sum(g, v, kind.matching, q)
            elif name == "B-8":
                cond[name] = _matching_sum(g, v, kind.matching, 2 * q - 1)
    elif kind.tag == "gracefully-total":
        cond["non-negative"] = all(x >= 0 for x in v)
        cond["edge-colors=[1,q]"] = ecol == list(range(1, q + 1))
    elif kind.tag == "edge-odd-graceful":
        cond["vertex-injective"] = len(vset) == g.p
        cond["edge-colors=[1,2q-1]odd"] = ecol == sorted(odd_range(q))
    elif kind.tag == "felicitous":
        cond["vertex-injective"] = len(vset) == g.p
        cond["vertex-range"] = all(0 <= x <= q for x in v)
        cond["edge-distinct"] = len(set(ecol)) == q
    else:
        total = list(v) + [induced[e] for e in g.edges]
        cond["total-injective"] = len(set(total)) == g.p + q
        cond["positive"] = all(x >= 1 for x in total)
        if kind.tag == "edge-magic-total":
            off = [e for e in g.edges if v[e[0]] + induced[e] + v[e[1]] != kind.c]
            cond["magic"] = not off
        else:
            off = [e for e in g.edges if abs(v[e[0]] + v[e[1]] - induced[e]) != kind.c]
            cond["magic-graceful"] = not off
        bad += [f"edge {e} breaks the constant {kind.c}" for e in off]
    bad += [f"{k} fails" for k, ok in cond.items() if not ok and not k.startswith("edge-consistent")]
    return LabelingReport(all(cond.values()), cond, induced, bad)


# (k, d) total colorings

@dataclass(frozen=True)
class KdParams:
    k: int
    d: int
    variant: int
    strong: bool = False
    c: Optional[int] = None
    a: int = 0
    matching: Optional[Tuple[Edge, ...]] = None

    def __post_init__(self):
        if self.k < 0 or self.d < 1:
            raise PreconditionError("need k >= 0 and d >= 1")
        if self.variant not in range(1, 10):
            raise PreconditionError(f"unknown variant Ptol-{self.variant}")
        if self.variant >= 6 and self.c is None:
            raise PreconditionError(f"Ptol-{self.variant} needs the constant c")
        if self.variant in (1, 2) and self.strong and self.matching is None:
            raise PreconditionError("strong Ptol-1/2 needs a matching")


def s_set(m: int, k: int, a: int, d: int) -> set:
    return {k + (a + j) * d for j in range(m + 1)}


def o_set(q: int, k: int, d: int) -> set:
    return {k + j * d for j in range(1, 2 * q, 2)}


def modstar(total: int, k: int, modulus: int) -> int:
    """Representative r in [k, k+modulus-1] with r - k = (total - k) mod modulus."""
    return k + (total - k) % modulus


def _kd_edge_values(g: Graph, f: Labeling, prm: KdParams) -> Dict[Edge, int]:
    v = f.vertex
    if f.edge is not None:
        return dict(f.edge)
    if prm.variant in (1, 2):
        return {(a, b): abs(v[a] - v[b]) for a, b in g.edges}
    if prm.variant in (4, 5):
        return {(a, b): modstar(v[a] + v[b], prm.k, g.q * prm.d) for a, b in g.edges}
    raise PreconditionError(f"Ptol-{prm.variant} needs explicit edge colours")


def _kd_once(g: Graph, f: Labeling, prm: KdParams, xs: set) -> Tuple[Dict[str, bool], List[str]]:
    k, d, q = prm.k, prm.d, g.q
    v = f.vertex
    ev = _kd_edge_values(g, f, prm)
    cond: Dict[str, bool] = {}
    bad: List[str] = []
    ys = set(g.vertices()) - xs
    cond["X-in-S(m,0,0,d)"] = all(v[x] >= 0 and v[x] % d == 0 for x in xs)

    def in_k_prog(val):
        return val >= k and (val - k) % d == 0

    if prm.variant != 3:
        cond["Y∪E-in-S(n,k,0,d)"] = all(in_k_prog(v[y]) for y in ys) and all(in_k_prog(c) for c in ev.values())
    eset = set(ev.values())

    def per_edge(name, rule):
        off = [e for e in g.edges if not rule(v[e[0]], ev[e], v[e[1]])]
        cond[name] = not off
        bad.extend(f"edge {e} violates {name}" for e in off)

    var = prm.variant
    if var in (1, 2):
        per_edge("f(uv)=|f(u)-f(v)|", lambda a, c, b: c == abs(a - b))
        if var == 1:
            cond["f(E)=S(q-1,k,0,d)"] = eset == s_set(q - 1, k, 0, d) and len(ev) == q
        else:
            cond["f(E)=O(2q-1,k,d)"] = eset == o_set(q, k, d)
            cond["Y∪E-in-S(2q-1,k,0,d)"] = all(val <= k + (2 * q - 1) * d for val in
                                              [v[y] for y in ys] + list(ev.values()))
        if prm.strong:
            total = k + (q - 1) * d if var == 1 else k + (2 * q - 1) * d
            cond["matching-sum"] = all(v[a] + v[b] == total for a, b in prm.matching) and \
                all(g.has_edge(a, b) for a, b in prm.matching)
    elif var == 3:
        a = prm.a
        sums = {v[x] + ev[(x, y)] + v[y] for x, y in g.edges}
        cond["edge-sums"] = sums == {2 * k + 2 * (a + j) * d for j in range(q)}
        allowed = s_set(2 * (a + q - 1), k, a, d)
        cond["Y∪E-in-S(2(a+q-1),k,a,d)"] = all(v[y] in allowed for y in ys) and eset <= allowed
    elif var in (4, 5):
        per_edge("mod* rule", lambda a, c, b: c == modstar(a + b, k, q * d))
        if var == 4:
            cond["f(E)=S(q-1,k,0,d)"] = eset == s_set(q - 1, k, 0, d) and len(ev) == q
        else:
            cond["f(E)=O(2q-1,k,d)"] = eset == o_set(q, k, d)
    else:
        c = prm.c
        rules = {
            6: ("f(u)+f(uv)+f(v)=c", lambda a, e, b: a + e + b == c),
            7: ("f(uv)+|f(u)-f(v)|=c", lambda a, e, b: e + abs(a - b) == c),
            8: ("|f(u)+f(v)-f(uv)|=c", lambda a, e, b: abs(a + b - e) == c),
            9: ("||f(u)-f(v)|-f(uv)|=c", lambda a, e, b: abs(abs(a - b) - e) == c),
        }
        name, rule = rules[var]
        per_edge(name, rule)
        if prm.strong:
            cond["f(E)=S(q-1,k,0,d)"] = eset == s_set(q - 1, k, 0, d) and len(ev) == q
    return cond, bad


@dataclass
class KdReport:
    ok: bool
    conditions: Dict[str, bool]
    part_x: Tuple[int, ...]
    violations: List[str]

    def __bool__(self):
        return self.ok


def verify_kd_total(g: Graph, f: Labeling, prm: KdParams, part_x=None) -> KdReport:
    """Check a (k,d) total colouring of variant Ptol-1..9.

    Without a declared X side both orientations of the bipartition are tried and
    the first that passes (or the first tried) is reported.
    """
    if len(f.vertex) != g.p:
        raise PreconditionError("labeling is not total on V(G)")
    if part_x is not None:
        xs = set(part_x)
        if any((a in xs) == (b in xs) for a, b in g.edges):
            raise PreconditionError("declared X side is not a bipartition class")
        options = [xs]
    else:
        bp = g.bipartition()
        if bp is None:
            raise PreconditionError("graph is not bipartite; declare a bipartition")
        options = [set(bp[0]), set(bp[1])]
    first = None
    for xs in options:
        cond, bad = _kd_once(g, f, prm, xs)
        rep = KdReport(all(cond.values()), cond, tuple(sorted(xs)), bad)
        if rep.ok:
            return rep
        first = first or rep
    return first


def verify_edge_odd_graceful_base(graphs: Sequence[Tuple[Graph, Labeling]]) -> bool:
    union = set()
    for g, f in graphs:
        v = f.vertex
        if len(set(v)) != g.p:
            raise PreconditionError("each labeling must be injective on its graph")
        if sorted(abs(v[a] - v[b]) for a, b in g.edges) != sorted(odd_range(g.q)):
            return False
        union |= set(v)
    return bool(union) and union == set(range(max(union) + 1))


# search

def _vertex_range(g: Graph, tag: str, eta) -> int:
    if tag in ("odd-graceful", "set-ordered-odd-graceful", "strongly-odd-graceful",
               "set-ordered-strongly-odd-graceful", "edge-odd-graceful"):
        return 2 * g.q - 1
    return g.q


def search_labeling(g: Graph, kind: LabelingKind, order: Optional[Sequence[int]] = None) -> Optional[Labeling]:
    """Lexicographically smallest vertex labeling of the given kind, or None.

    Supports the vertex-determined kinds (graceful family, edge-odd-graceful,
    felicitous).  The exhaustive search refuses graphs with more than 20 edges.
    `order` changes the variable order; the result is then the first solution
    in that order rather than the lexicographic minimum.
    """
    tag = kind.tag
    if tag not in (set(_B_CONDITIONS) | {"edge-odd-graceful", "felicitous", "gracefully-total"}):
        raise PreconditionError(f"search does not support kind {tag}")
    if g.q > SEARCH_CAP:
        raise CapExceeded("search_labeling", g.q, SEARCH_CAP)
    if g.p == 0:
        return None
    hi = _vertex_range(g, tag, kind.eta)
    odd = hi == 2 * g.q - 1
    if tag == "felicitous":
        eta = kind.eta if kind.eta is not None else g.q
        if eta == 0:
            return None
    injective = tag != "gracefully-total"
    target = odd_range(g.q) if odd else set(range(1, g.q + 1))
    order = list(order) if order is not None else list(range(g.p))
    pos = {x: i for i, x in enumerate(order)}
    earlier = [[y for y in g.neighbors(x) if pos[y] < pos[x]] for x in order]
    f = [-1] * g.p
    used_v = set()
    used_e: set = set()

    def ok_final() -> bool:
        return verify_labeling(g, Labeling(f), kind).ok

    def rec(i: int) -> bool:
        if i == len(order):
            return ok_final()
        x = order[i]
        for val in range(hi + 1):
            if injective and val in used_v:
                continue
            new = []
            good = True
            for y in earlier[i]:
                if tag == "felicitous":
                    c = (val + f[y]) % eta
                else:
                    c = abs(val - f[y])
                    if c not in target:
                        good = False
                        break
                if c in used_e or c in new:
                    good = False
                    break
                new.append(c)
            if not good:
                continue
            f[x] = val
            used_v.add(val)
            used_e.update(new)
            if rec(i + 1):
                return True
            used_e.difference_update(new)
            used_v.discard(val)
            f[x] = -1
        return False

    found = rec(0)
    return Labeling(f) if found else None


def find_graceful_fast(g: Graph, odd: bool = False) -> Optional[Labeling]:
    """Some graceful (or odd-graceful) labeling of a connected graph, found by
    placing edge values from the largest down.

    Each step realises the largest missing edge value by labeling a fresh
    vertex next to the labeled part, so the labeled part stays connected.  This
    is incomplete in general; callers fall back to the exhaustive search.
    """
    if g.p == 0 or not g.is_connected():
        return None
    if g.q == 0:
        return Labeling([0] * g.p)
    q = g.q
    top = 2 * q - 1 if odd else q
    targets = sorted(odd_range(q) if odd else range(1, q + 1), reverse=True)
    f = [-1] * g.p
    used_v = set()
    used_e = set()
    budget = [200000]

    def place(x, val):
        new = []
        for y in g.neighbors(x):
            if f[y] >= 0:
                c = abs(val - f[y])
                if c in used_e or c in new or (odd and c % 2 == 0) or c == 0:
                    return None
                new.append(c)
        return new

    def rec(ti: int) -> bool:
        budget[0] -= 1
        if budget[0] < 0:
            return False
        while ti < len(targets) and targets[ti] in used_e:
            ti += 1
        if ti == len(targets):
            return all(x >= 0 for x in f)
        c = targets[ti]
        tried = set()
        for y in range(g.p):
            if f[y] < 0:
                continue
            for x in sorted(g.neighbors(y)):
                if f[x] >= 0:
                    continue
                for val in (f[y] + c, f[y] - c):
                    if not (0 <= val <= top) or val in used_v or (x, val) in tried:
                        continue
                    tried.add((x, val))
                    new = place(x, val)
                    if new is None:
                        continue
                    f[x] = val
                    used_v.add(val)
                    used_e.update(new)
                    if rec(ti + 1):
                        return True
                    used_e.difference_update(new)
                    used_v.discard(val)
                    f[x] = -1
        return False

    for u, v in g.edges:
        for a, b in ((u, v), (v, u)):
            f[a], f[b] = 0, top
            used_v.update((0, top))
            used_e.add(top)
            if rec(0):
                return Labeling(f)
            f[a] = f[b] = -1
            used_v.clear()
            used_e.clear()
    return None


def any_graceful(g: Graph, odd: bool = False) -> Labeling:
    """A graceful / odd-graceful labeling: fast search first, then exhaustive."""
    f = find_graceful_fast(g, odd)
    if f is None:
        bfs = sorted(g.vertices(), key=lambda x: (g.distances_from(0)[x], x)) if g.p else []
        f = search_labeling(g, LabelingKind("odd-graceful" if odd else "graceful"), order=bfs)
    if f is None:
        raise PreconditionError("graph has no labeling of the requested kind")
    return f
