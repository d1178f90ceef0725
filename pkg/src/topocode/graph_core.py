"""Simple undirected graphs and the structural operations used everywhere else.

Vertices are the integers 0..p-1.  Edges are stored as (small, large) pairs in
sorted order, so two graphs with the same edges compare equal.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import CapExceeded, PreconditionError

Edge = Tuple[int, int]

ISO_CAP = 32
HAMILTON_CAP = 16


def norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    p: int
    edges: Tuple[Edge, ...]
    names: Optional[Tuple[str, ...]] = None
    _adj: Tuple[frozenset, ...] = field(default=(), repr=False, compare=False, hash=False)

    def __init__(self, p: int, edges: Iterable[Sequence[int]] = (), names=None):
        if p < 0:
            raise PreconditionError("negative order")
        seen = set()
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if u == v:
                raise PreconditionError(f"loop at vertex {u}")
            if not (0 <= u < p and 0 <= v < p):
                raise PreconditionError(f"edge ({u},{v}) out of range for p={p}")
            ne = norm_edge(u, v)
            if ne in seen:
                raise PreconditionError(f"multi-edge {ne}")
            seen.add(ne)
        if names is not None:
            names = tuple(str(n) for n in names)
            if len(names) != p:
                raise PreconditionError("names length differs from order")
        adj: List[set] = [set() for _ in range(p)]
        for u, v in seen:
            adj[u].add(v)
            adj[v].add(u)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "edges", tuple(sorted(seen)))
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "_adj", tuple(frozenset(a) for a in adj))

    @property
    def q(self) -> int:
        return len(self.edges)

    def vertices(self) -> range:
        return range(self.p)

    def neighbors(self, x: int) -> frozenset:
        return self._adj[x]

    def degree(self, x: int) -> int:
        return len(self._adj[x])

    def has_edge(self, u: int, v: int) -> bool:
        return 0 <= u < self.p and v in self._adj[u]

    def edge_index(self) -> Dict[Edge, int]:
        return {e: i for i, e in enumerate(self.edges)}

    def is_connected(self) -> bool:
        if self.p == 0:
            return True
        return len(_reach(self, 0, set())) == self.p

    def is_tree(self) -> bool:
        return self.p >= 1 and self.q == self.p - 1 and self.is_connected()

    def bipartition(self) -> Optional[Tuple[List[int], List[int]]]:
        """Two colour classes by BFS, or None if an odd cycle exists."""
        side = [-1] * self.p
        for s in range(self.p):
            if side[s] >= 0:
                continue
            side[s] = 0
            dq = deque([s])
            while dq:
                x = dq.popleft()
                for y in self._adj[x]:
                    if side[y] < 0:
                        side[y] = 1 - side[x]
                        dq.append(y)
                    elif side[y] == side[x]:
                        return None
        return ([x for x in range(self.p) if side[x] == 0],
                [x for x in range(self.p) if side[x] == 1])

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex x renamed perm[x]."""
        return Graph(self.p, [(perm[u], perm[v]) for u, v in self.edges])

    def distances_from(self, s: int) -> List[int]:
        dist = [-1] * self.p
        dist[s] = 0
        dq = deque([s])
        while dq:
            x = dq.popleft()
            for y in self._adj[x]:
                if dist[y] < 0:
                    dist[y] = dist[x] + 1
                    dq.append(y)
        return dist

    def diameter(self) -> int:
        if not self.is_connected():
            raise PreconditionError("diameter of a disconnected graph")
        return max((max(self.distances_from(s)) for s in range(self.p)), default=0)


def _reach(g: Graph, s: int, removed: set) -> set:
    seen = {s}
    stack = [s]
    while stack:
        x = stack.pop()
        for y in g.neighbors(x):
            if y not in seen and y not in removed:
                seen.add(y)
                stack.append(y)
    return seen


# small named families, handy in tests and the CLI

def complete(n: int) -> Graph:
    return Graph(n, combinations(range(n), 2))


def path(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise PreconditionError("cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def star(n: int) -> Graph:
    """K_{1,n} with centre 0."""
    return Graph(n + 1, [(0, i) for i in range(1, n + 1)])


def tree_from_pruefer(seq: Sequence[int]) -> Graph:
    n = len(seq) + 2
    deg = [1] * n
    for x in seq:
        deg[x] += 1
    edges = []
    for x in seq:
        leaf = min(i for i in range(n) if deg[i] == 1)
        edges.append((leaf, x))
        deg[leaf] -= 1
        deg[x] -= 1
    u, v = [i for i in range(n) if deg[i] == 1]
    edges.append((u, v))
    return Graph(n, edges)


def random_tree(n: int, rng) -> Graph:
    if n == 1:
        return Graph(1)
    if n == 2:
        return Graph(2, [(0, 1)])
    return tree_from_pruefer([rng.randrange(n) for _ in range(n - 2)])


def random_graph(n: int, prob: float, rng) -> Graph:
    return Graph(n, [e for e in combinations(range(n), 2) if rng.random() < prob])


def random_connected_graph(n: int, prob: float, rng) -> Graph:
    t = random_tree(n, rng)
    extra = [e for e in combinations(range(n), 2) if rng.random() < prob]
    return Graph(n, set(t.edges) | set(extra))


# degree sequences

def degree_sequence(g: Graph) -> Tuple[int, ...]:
    return tuple(sorted((g.degree(x) for x in g.vertices()), reverse=True))


def is_graphical(d: Sequence[int]) -> bool:
    """Erdos-Gallai test on a non-increasing sequence."""
    d = list(d)
    if any(d[i] < d[i + 1] for i in range(len(d) - 1)):
        raise PreconditionError("degree sequence must be non-increasing")
    if any(x < 0 for x in d):
        return False
    if sum(d) % 2:
        return False
    n = len(d)
    lhs = 0
    for k in range(1, n + 1):
        lhs += d[k - 1]
        rhs = k * (k - 1) + sum(min(x, k) for x in d[k:])
        if lhs > rhs:
            return False
    return True


# splitting and coinciding

def split_vertex(g: Graph, u: int, part: Iterable[int]) -> Graph:
    """Split u into u' (keeps id u, neighbours `part`) and u'' (new id p, the rest)."""
    nu = g.neighbors(u)
    if len(nu) < 2:
        raise PreconditionError(f"vertex {u} has degree {len(nu)} < 2")
    a = set(part)
    if not a <= nu:
        raise PreconditionError("part is not a subset of N(u)")
    b = nu - a
    if not a or not b:
        raise PreconditionError("both parts of the split must be non-empty")
    new = g.p
    edges = [e for e in g.edges if u not in e]
    edges += [(u, y) for y in a] + [(new, y) for y in b]
    return Graph(g.p + 1, edges)


def _merge_ids(p: int, keep: int, drop: int) -> List[int]:
    out = []
    for x in range(p):
        if x == drop:
            out.append(keep)
        else:
            out.append(x if x < drop else x - 1)
    return out


def coincide_vertices(g: Graph, u1: int, u2: int) -> Tuple[Graph, List[int]]:
    """Merge u1 and u2 into one vertex.

    The merged vertex takes the smaller id and the ids above the larger one
    shift down by one.  Returns (graph, remap) with remap[old] = new.
    """
    if u1 == u2:
        raise PreconditionError("cannot coincide a vertex with itself")
    if g.has_edge(u1, u2):
        raise PreconditionError(f"{u1} and {u2} are adjacent (would create a loop)")
    common = g.neighbors(u1) & g.neighbors(u2)
    if common:
        raise PreconditionError(
            f"{u1} and {u2} share neighbours {sorted(common)} (would create a multi-edge)")
    keep, drop = min(u1, u2), max(u1, u2)
    remap = _merge_ids(g.p, keep, drop)
    return Graph(g.p - 1, [(remap[a], remap[b]) for a, b in g.edges]), remap


def split_edge(g: Graph, u: int, v: int, u_keep=None, v_keep=None) -> Graph:
    """Edge-split uv.

    u' keeps id u with neighbours `u_keep` plus v'; u'' gets id p with the other
    old neighbours of u plus v''.  Likewise v' = v, v'' = p+1.  Empty parts give
    the leaf-splitting form.  Defaults: u' keeps everything, v' keeps nothing.
    """
    if not g.has_edge(u, v):
        raise PreconditionError(f"edge ({u},{v}) absent")
    nu = g.neighbors(u) - {v}
    nv = g.neighbors(v) - {u}
    a = set(nu if u_keep is None else u_keep)
    c = set() if v_keep is None else set(v_keep)
    if not a <= nu or not c <= nv:
        raise PreconditionError("kept neighbours must come from N(u)-v / N(v)-u")
    b, d = nu - a, nv - c
    u2, v2 = g.p, g.p + 1
    edges = [e for e in g.edges if u not in e and v not in e]
    edges += [(u, y) for y in a] + [(u2, y) for y in b]
    edges += [(v, y) for y in c] + [(v2, y) for y in d]
    edges += [(u, v), (u2, v2)]
    return Graph(g.p + 2, edges)


def coincide_edges(g: Graph, e1: Sequence[int], e2: Sequence[int]) -> Tuple[Graph, List[int]]:
    """Edge-coincide e1 = (u', v') with e2 = (u'', v''), pairing u' with u''."""
    a, b = e1
    c, d = e2
    if len({a, b, c, d}) != 4:
        raise PreconditionError("edges to coincide must have four distinct ends")
    if not g.has_edge(a, b) or not g.has_edge(c, d):
        raise PreconditionError("edge absent")
    if g.neighbors(a) & g.neighbors(c) or g.neighbors(b) & g.neighbors(d):
        raise PreconditionError("neighbourhood clash between the edges' ends")
    if g.has_edge(a, c) or g.has_edge(b, d):
        raise PreconditionError("ends to be merged are adjacent")
    h = Graph(g.p, [e for e in g.edges if e != norm_edge(c, d)])
    h, r1 = coincide_vertices(h, a, c)
    h, r2 = coincide_vertices(h, r1[b], r1[d])
    return h, [r2[r1[x]] for x in range(g.p)]


# homomorphisms and isomorphism

@dataclass(frozen=True)
class HomReport:
    is_hom: bool
    faithful: bool
    full: bool
    bad_edge: Optional[Edge] = None

    def __bool__(self):
        return self.is_hom


def check_homomorphism(g: Graph, h: Graph, f: Sequence[int]) -> HomReport:
    if len(f) != g.p or any(not (0 <= y < h.p) for y in f):
        raise PreconditionError("vertex map is not total on V(G) into V(H)")
    for u, v in g.edges:
        if not h.has_edge(f[u], f[v]):
            return HomReport(False, False, False, (u, v))
    image_v = set(f)
    image_e = {norm_edge(f[u], f[v]) for u, v in g.edges}
    induced = {e for e in h.edges if e[0] in image_v and e[1] in image_v}
    faithful = induced == image_e
    full = all(g.has_edge(u, v) == h.has_edge(f[u], f[v])
               for u, v in combinations(range(g.p), 2) if f[u] != f[v])
    return HomReport(True, faithful, full)


def _refine(graphs: Sequence[Graph], start=None) -> List[List[int]]:
    """Colour refinement run on both graphs with one shared palette."""
    cols = [[g.degree(x) for x in g.vertices()] for g in graphs]
    if start is not None:
        pal = {s: i for i, s in enumerate(sorted({(c, d) for cs, ds in zip(start, cols)
                                                  for c, d in zip(cs, ds)}))}
        cols = [[pal[(c, d)] for c, d in zip(cs, ds)] for cs, ds in zip(start, cols)]
    while True:
        sigs = [[(c[x], tuple(sorted(c[y] for y in g.neighbors(x)))) for x in g.vertices()]
                for g, c in zip(graphs, cols)]
        palette = {s: i for i, s in enumerate(sorted({s for sg in sigs for s in sg}))}
        new = [[palette[s] for s in sg] for sg in sigs]
        if all(len(set(n)) == len(set(c)) for n, c in zip(new, cols)):
            return new
        cols = new


def find_isomorphism(g: Graph, h: Graph, colors=None) -> Optional[List[int]]:
    """Lexicographically smallest bijection f with G -> H an isomorphism, or None.

    `colors` optionally gives a pair of vertex colour lists that the bijection
    must preserve (used for incidence graphs of hypergraphs).
    """
    for x in (g, h):
        if x.p > ISO_CAP:
            raise CapExceeded("find_isomorphism", x.p, ISO_CAP)
    if g.p != h.p or g.q != h.q or degree_sequence(g) != degree_sequence(h):
        return None
    cg, ch = _refine([g, h], colors)
    if sorted(cg) != sorted(ch):
        return None
    f = [-1] * g.p
    used = [False] * h.p

    def extend(x: int) -> bool:
        if x == g.p:
            return True
        for y in range(h.p):
            if used[y] or ch[y] != cg[x]:
                continue
            if any(h.has_edge(y, f[z]) != g.has_edge(x, z) for z in range(x)):
                continue
            f[x] = y
            used[y] = True
            if extend(x + 1):
                return True
            used[y] = False
        f[x] = -1
        return False

    return list(f) if extend(0) else None


# Hamilton cycles

def _iter_hamilton(g: Graph):
    if g.p > HAMILTON_CAP:
        raise CapExceeded("hamilton cycles", g.p, HAMILTON_CAP)
    n = g.p
    if n < 3:
        return
    seq = [0]
    on = [False] * n
    on[0] = True

    def reachable_ok() -> bool:
        # every unvisited vertex must still have two usable neighbours
        last = seq[-1]
        for x in range(n):
            if on[x]:
                continue
            free = sum(1 for y in g.neighbors(x) if not on[y] or y == last or y == 0)
            if free < 2:
                return False
        return True

    def dfs():
        if len(seq) == n:
            if g.has_edge(seq[-1], 0) and seq[1] < seq[-1]:
                yield tuple(seq)
            return
        for y in sorted(g.neighbors(seq[-1])):
            if on[y]:
                continue
            seq.append(y)
            on[y] = True
            if reachable_ok():
                yield from dfs()
            on[y] = False
            seq.pop()

    yield from dfs()


def hamilton_cycles(g: Graph) -> List[Tuple[int, ...]]:
    """All Hamilton cycles as (0, a, ..., b) with a < b, sorted."""
    return sorted(_iter_hamilton(g))


def cycle_edges(cyc: Sequence[int]) -> List[Edge]:
    return sorted(norm_edge(cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc)))


@dataclass(frozen=True)
class EdgeHamReport:
    value: bool
    missing_edge: Optional[Edge]
    witnesses: Dict[Edge, Tuple[int, ...]]

    def __bool__(self):
        return self.value


def is_edge_hamiltonian(g: Graph) -> EdgeHamReport:
    """Every edge lies on a Hamilton cycle.  Graphs without one are not edge-hamiltonian."""
    todo = set(g.edges)
    wit: Dict[Edge, Tuple[int, ...]] = {}
    found = False
    for cyc in _iter_hamilton(g):
        found = True
        for e in cycle_edges(cyc):
            if e in todo:
                todo.discard(e)
                wit[e] = cyc
        if not todo:
            break
    if not found or todo:
        missing = min(todo) if todo else None
        return EdgeHamReport(False, missing, wit)
    return EdgeHamReport(True, None, wit)


# connectivity

def _local_cut(g: Graph, s: int, t: int) -> set:
    """Minimum s-t vertex separator for non-adjacent s, t (unit-capacity max flow)."""
    # node x becomes x_in = 2x, x_out = 2x+1
    cap: Dict[Tuple[int, int], int] = {}
    adj: Dict[int, set] = {i: set() for i in range(2 * g.p)}

    def arc(a, b, c):
        cap[(a, b)] = cap.get((a, b), 0) + c
        cap.setdefault((b, a), 0)
        adj[a].add(b)
        adj[b].add(a)

    big = g.p + 1
    for x in g.vertices():
        arc(2 * x, 2 * x + 1, big if x in (s, t) else 1)
    for u, v in g.edges:
        arc(2 * u + 1, 2 * v, big)
        arc(2 * v + 1, 2 * u, big)
    src, dst = 2 * s + 1, 2 * t
    while True:
        prev = {src: None}
        dq = deque([src])
        while dq and dst not in prev:
            a = dq.popleft()
            for b in adj[a]:
                if b not in prev and cap[(a, b)] > 0:
                    prev[b] = a
                    dq.append(b)
        if dst not in prev:
            break
        b = dst
        while prev[b] is not None:
            a = prev[b]
            cap[(a, b)] -= 1
            cap[(b, a)] += 1
            b = a
    side = set(prev)
    return {x for x in g.vertices() if 2 * x in side and 2 * x + 1 not in side}


def min_vertex_cut(g: Graph) -> Tuple[int, List[int]]:
    """(kappa, witness cut).  Complete graphs give (p-1, all but one vertex)."""
    if g.p == 0 or not g.is_connected():
        raise PreconditionError("vertex connectivity needs a connected graph")
    best: Optional[set] = None
    for s, t in combinations(range(g.p), 2):
        if g.has_edge(s, t):
            continue
        cut = _local_cut(g, s, t)
        if best is None or len(cut) < len(best) or (len(cut) == len(best) and sorted(cut) < sorted(best)):
            best = cut
    if best is None:
        return g.p - 1, list(range(g.p - 1))
    return len(best), sorted(best)


def vertex_connectivity(g: Graph) -> int:
    return min_vertex_cut(g)[0]
