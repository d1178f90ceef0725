import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_hamilton_cycles
from topocode.coloring import SetColoring
from topocode.errors import CapExceeded, PreconditionError
from topocode.graph_core import (Graph, complete, cycle, find_isomorphism, is_edge_hamiltonian, path, random_connected_graph,
                                 random_tree)
from topocode.hypergraph import intersected_graph, validate
from topocode.lattice import (HAM_OPS, LatticeBase, LatticeWord, apply_op, compatible_splits,
                              edge_hamiltonian_extension_check, enumerate_01, extension, hypergraph_lattice_element,
                              legal_sites, replay_word, sample, vertex_splits)
from topocode.setcolor import construct_for_tree, verify_intersected

WHEEL5 = Graph(6, list(cycle(5).edges) + [(i, 5) for i in range(5)])


def brute_edge_ham(g):
    cyc = brute_hamilton_cycles(g.p, g.edges)
    return bool(cyc) and set().union(*cyc) == set(g.edges)


# operators

@pytest.mark.parametrize("op", HAM_OPS)
def test_ops_on_c4(op):
    sites = legal_sites(cycle(4), cycle(4), op)
    assert sites
    for s in sites:
        assert is_edge_hamiltonian(apply_op(cycle(4), cycle(4), op, s)[0]).value


@pytest.mark.parametrize("op", HAM_OPS)
def test_ops_on_k4_brute(op):
    for s in legal_sites(complete(4), complete(4), op)[::9]:
        h, _ = apply_op(complete(4), complete(4), op, s)
        assert brute_edge_ham(h)


def test_o1_shape():
    h, _ = apply_op(cycle(4), cycle(4), "O1", ((0, (1,)), (0, (1,))))
    assert (h.p, h.q) == (10, 10)


def test_illegal_split_site():
    with pytest.raises(PreconditionError):
        apply_op(cycle(4), cycle(4), "O2", ((0, (1, 3)), (0, (1,))))


def test_split_canonical_half():
    assert vertex_splits(complete(4), 0) == [(1,), (1, 2), (1, 3)]
    assert set(compatible_splits(cycle(4), 0)) == {(1,)}


def test_edge_coincide_colored_trees():
    t = path(3)
    c1 = construct_for_tree(t).with_intersection_edges(t)
    c2 = SetColoring([frozenset({7}), frozenset({7, 8}), frozenset({8})]).with_intersection_edges(t)
    h, col = apply_op(t, t, "edge-coincide", ((0, 1), (0, 1)), c1, c2)
    assert h.is_tree() and h.p == 4
    assert col.vertex[0] == c1.vertex[0] | c2.vertex[0]
    assert col.vertex[1] == c1.vertex[1] | c2.vertex[1]
    assert col.edge[(0, 1)] == c1.edge[(0, 1)] | c2.edge[(0, 1)]


def test_coincide_site_errors():
    with pytest.raises(PreconditionError):
        apply_op(path(3), path(3), "edge-coincide", ((0, 2), (0, 1)))
    with pytest.raises(PreconditionError):
        apply_op(path(3), path(3), "vertex-coincide", (0, 5))
    with pytest.raises(PreconditionError):
        apply_op(path(3), path(3), "merge", (0, 0))


# sampling

def test_single_base_word():
    s = sample(LatticeBase((complete(4),), "edge-hamiltonian"), LatticeWord((1,), 3))
    assert s.graph == complete(4) and len(s.trace) == 1


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_edge_hamiltonian_closure(seed):
    rng = random.Random(seed)
    base = LatticeBase((cycle(4), complete(4), cycle(5)), "edge-hamiltonian")
    counts = [0, 0, 0]
    # two steps at most keeps every sample within twelve vertices
    for _ in range(rng.randint(1, 2)):
        counts[rng.randrange(3)] += 1
    s = sample(base, LatticeWord(tuple(counts), seed))
    assert s.graph.p <= 12
    assert is_edge_hamiltonian(s.graph).value


def test_non_hamiltonian_base_rejected():
    with pytest.raises(PreconditionError):
        sample(LatticeBase((path(4),), "edge-hamiltonian"), LatticeWord((1,)))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.sampled_from(["edge-coincided", "vertex-coincided", "mixed"]))
def test_tree_bases_stay_trees(seed, kind):
    rng = random.Random(seed)
    trees = tuple(random_tree(rng.randint(2, 6), rng) for _ in range(3))
    cols = tuple(construct_for_tree(t).with_intersection_edges(t) for t in trees)
    counts = tuple(rng.randint(0, 2) for _ in trees)
    if sum(counts) == 0:
        counts = (1, 0, 0)
    s = sample(LatticeBase(trees, kind, cols), LatticeWord(counts, seed))
    assert s.graph.is_tree()
    used = [trees[i] for i, a in enumerate(counts) for _ in range(a)]
    edge_steps = sum(1 for t in s.trace[1:] if t["op"] == "edge-coincide")
    vertex_steps = sum(1 for t in s.trace[1:] if t["op"] == "vertex-coincide")
    assert s.graph.p == sum(t.p for t in used) - 2 * edge_steps - vertex_steps
    assert s.graph.q == sum(t.q for t in used) - edge_steps


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_trace_replays(seed):
    base = LatticeBase((cycle(4), complete(4)), "edge-hamiltonian")
    word = LatticeWord((1, 1), seed)
    s = sample(base, word)
    again = sample(base, replay_word(word, s.trace))
    assert again.graph == s.graph and again.trace == s.trace
    assert sample(base, word).graph == s.graph


def test_illegal_word():
    base = LatticeBase((cycle(4), cycle(4)), "edge-hamiltonian")
    with pytest.raises(PreconditionError):
        sample(base, LatticeWord((0, 0)))
    with pytest.raises(PreconditionError):
        sample(base, LatticeWord((1, 1), ops=("edge-coincide",)))
    with pytest.raises(PreconditionError):
        sample(base, LatticeWord((1, 1), ops=("O1",), sites=(((0, (1, 3)), (0, (1,))),)))


def test_sample_cap():
    base = LatticeBase((complete(5),), "edge-hamiltonian")
    with pytest.raises(CapExceeded):
        sample(base, LatticeWord((13,)))


# hypergraph lattice

def lam_bases():
    lam = range(6)
    return [validate(lam, [{0, 1}, {1, 2}, {2, 3}, {3, 4, 5}]),
            validate(lam, [{0, 5}, {4, 5}, {1, 4}, {2, 4}, {3, 5}])]


def test_single_hyper_base():
    b = lam_bases()
    el = hypergraph_lattice_element(b, LatticeWord((1, 0)))
    assert el.hypergraph == b[0]
    g, _ = intersected_graph(b[0])
    assert el.sample.graph == g


def test_common_ground_fold_is_intersected_graph_of_union():
    b = lam_bases()
    assert not set(b[0].edges) & set(b[1].edges)
    union = validate(range(6), set(b[0].edges) | set(b[1].edges))
    target, _ = intersected_graph(union)
    for seed in range(5):
        el = hypergraph_lattice_element(b, LatticeWord((1, 1), seed))
        assert el.hypergraph == union
        assert find_isomorphism(el.sample.graph, target) is not None


def test_disjoint_ground_fold_is_intersected_graph_of_its_sets():
    b = [validate(range(4), [{0, 1}, {1, 2}, {2, 3}]), validate(range(10, 15), [{10, 11}, {11, 12, 13}, {13, 14}])]
    for seed in range(10):
        el = hypergraph_lattice_element(b, LatticeWord((1, 1), seed))
        g, col = el.sample.graph, el.sample.coloring
        rep = verify_intersected(g, col)
        assert rep.ok and rep.verdict == "intersected-graph"
        # the two coincided vertices carry unions of one set from each base
        assert g.p == b[0].size + b[1].size - 2
        assert len(set(col.vertex) - {frozenset(e) for e in el.hypergraph.edges}) == 2


def test_enumerate_01():
    b = lam_bases() + [validate(range(3), [{0, 1}, {1, 2}])]
    out = enumerate_01(b)
    assert len(out) == 2 ** 3
    assert out[(0, 0, 0)] is None
    assert sum(v is not None for v in out.values()) == 7
    assert out[(0, 0, 1)].hypergraph == b[2]


def test_k4_hamilton_hypergraph_is_k3():
    from topocode.graph_core import cycle_edges, hamilton_cycles
    cycles = hamilton_cycles(complete(4))
    assert len(cycles) == 3
    fam = [set(cycle_edges(c)) for c in cycles]
    edges = sorted(complete(4).edges)
    h = validate(range(6), [{edges.index(e) for e in s} for s in fam])
    g, _ = intersected_graph(h)
    assert g == complete(3)


# extensions

def test_extension_k4_edge_mode():
    for u in range(4):
        rep = edge_hamiltonian_extension_check(complete(4), u, "edge")
        assert rep.original and rep.extended


def test_extension_tree():
    for mode in ("edge", "path", "clique"):
        rep = edge_hamiltonian_extension_check(path(5), 1, mode)
        assert not rep.original and not rep.extended


def test_clique_two_is_edge():
    g = WHEEL5
    for part in vertex_splits(g, 0):
        assert extension(g, 0, part, "clique", m=2) == extension(g, 0, part, "edge")


def test_clique_join_edge_never_covered():
    # a Hamilton cycle through the attached clique must run u' .. u'' across all its inner vertices
    for g in (complete(4), WHEEL5):
        for m in (3, 4):
            for part in vertex_splits(g, 0):
                h = extension(g, 0, part, "clique", m=m)
                covered = set().union(*brute_hamilton_cycles(h.p, h.edges)) if h.p <= 9 else set()
                assert (0, g.p) not in covered


def edge_hamiltonian_samples(n, seed):
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        g = random_connected_graph(rng.randint(4, 8), 0.6, rng)
        if is_edge_hamiltonian(g).value:
            out.append(g)
    return out


@pytest.mark.parametrize("mode", ["edge", "path"])
def test_extension_equivalence(mode):
    for g in edge_hamiltonian_samples(15, 1):
        for u in g.vertices():
            rep = edge_hamiltonian_extension_check(g, u, mode)
            assert rep.equivalent, (g, u)


def test_extension_equivalence_clique():
    for g in edge_hamiltonian_samples(15, 1):
        for u in g.vertices():
            rep = edge_hamiltonian_extension_check(g, u, "clique")
            assert rep.equivalent, (g.edges, u)


def test_extension_against_brute_force():
    for g in edge_hamiltonian_samples(6, 2):
        if g.p > 7:
            continue
        for part in vertex_splits(g, 0):
            for mode in ("edge", "path"):
                h = extension(g, 0, part, mode)
                assert bool(is_edge_hamiltonian(h).value) == brute_edge_ham(h)
