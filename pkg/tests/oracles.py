"""Brute-force reference implementations used only by the tests.

Each one is written from the definition with no shared code path into the
library routine it checks."""
from functools import lru_cache
from itertools import combinations, permutations, product


def all_graph_edge_sets(n):
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield [pairs[i] for i in range(len(pairs)) if mask >> i & 1]


@lru_cache(maxsize=None)
def realizable(d):
    """Exhaustive search for a simple graph with degree multiset d: the first
    vertex with positive residual degree is joined to every possible subset
    of later vertices."""
    d = tuple(sorted(d, reverse=True))
    if any(x < 0 for x in d):
        return False
    if all(x == 0 for x in d):
        return True
    need, rest = d[0], list(d[1:])
    if need > len(rest):
        return False
    for chosen in combinations(range(len(rest)), need):
        nxt = rest[:]
        ok = True
        for i in chosen:
            nxt[i] -= 1
            if nxt[i] < 0:
                ok = False
                break
        if ok and realizable(tuple(nxt)):
            return True
    return False


def adjacency(p, edges):
    adj = [set() for _ in range(p)]
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    return adj


def connected_after(p, edges, removed):
    keep = [x for x in range(p) if x not in removed]
    if len(keep) <= 1:
        return True
    adj = adjacency(p, edges)
    seen = {keep[0]}
    stack = [keep[0]]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in removed and y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(keep)


def brute_connectivity(p, edges):
    """Smallest vertex subset whose removal disconnects; p-1 when none does."""
    for k in range(p - 1):
        for cut in combinations(range(p), k):
            if not connected_after(p, edges, set(cut)):
                return k
    return p - 1


def brute_hamilton_cycles(p, edges):
    """Hamilton cycles as frozensets of edges, from all vertex permutations."""
    es = {tuple(sorted(e)) for e in edges}
    out = set()
    if p < 3:
        return out
    for perm in permutations(range(1, p)):
        cyc = (0,) + perm
        ce = frozenset(tuple(sorted((cyc[i], cyc[(i + 1) % p]))) for i in range(p))
        if ce <= es:
            out.add(ce)
    return out


def brute_isomorphic(p, e1, e2):
    s2 = {tuple(sorted(e)) for e in e2}
    if len(e1) != len(s2):
        return False
    for perm in permutations(range(p)):
        if {tuple(sorted((perm[a], perm[b]))) for a, b in e1} == s2:
            return True
    return False


def brute_chromatic(p, edges):
    for k in range(1, p + 1):
        for col in product(range(k), repeat=p):
            if all(col[a] != col[b] for a, b in edges):
                return k
    return p


def brute_exact_covers(ground, family):
    ground = set(ground)
    fam = [frozenset(e) for e in family]
    out = []
    for r in range(1, len(fam) + 1):
        for sub in combinations(fam, r):
            if sum(len(s) for s in sub) == len(ground) and set().union(*sub) == ground:
                out.append(sorted(tuple(sorted(s)) for s in sub))
    return sorted(out)


def brute_edge_chromatic_set(p, edges):
    """Fewest colours in an adjacent 1-common edge colouring: proper at every
    vertex, and for each edge uv the colour sets seen at u and at v meet in
    exactly one colour."""
    edges = [tuple(sorted(e)) for e in edges]
    n = len(edges)
    inc = [[i for i, e in enumerate(edges) if x in e] for x in range(p)]

    def ok(col):
        for x in range(p):
            seen = [col[i] for i in inc[x] if col[i] is not None]
            if len(seen) != len(set(seen)):
                return False
        for i, (u, v) in enumerate(edges):
            if col[i] is None:
                continue
            cu = {col[j] for j in inc[u] if j != i and col[j] is not None}
            cv = {col[j] for j in inc[v] if j != i and col[j] is not None}
            if cu & cv:
                return False
        return True

    for k in range(1, n + 1):
        col = [None] * n

        def place(i):
            if i == n:
                return True
            for c in range(k):
                col[i] = c
                if ok(col) and place(i + 1):
                    return True
            col[i] = None
            return False

        if place(0):
            return k
    return n
