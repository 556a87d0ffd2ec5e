from itertools import combinations, permutations

import networkx as nx
import pytest
from hypothesis import given

from liftedmc.fixtures import complete_graph, cycle_graph, fig7i, grid_graph, path_graph
from liftedmc.graph import (
    Graph,
    GraphError,
    LiftedPair,
    components,
    contract_edge,
    cut_vertices,
    cycle_edges,
    edge,
    enumerate_chordless_cycles,
    enumerate_cycles,
    enumerate_vw_cuts,
    enumerate_vw_paths,
    is_connected,
    separates,
)

from conftest import lifted_pairs


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def brute_cycles_k4():
    """Cycles of K4 by node subsets: every 3- or 4-set, chordless iff no extra edge."""
    g = complete_graph(4)
    tri = quad_chordless = 0
    for k in (3, 4):
        for nodes in combinations(range(4), k):
            for order in permutations(nodes[1:]):
                seq = (nodes[0],) + order
                if seq[1] > seq[-1]:
                    continue
                cyc = cycle_edges(seq)
                chords = [e for e in combinations(nodes, 2) if e in g.edge_set and e not in cyc]
                if not chords:
                    tri += k == 3
                    quad_chordless += k == 4
    return tri, quad_chordless


def test_edge_canonical():
    assert edge(3, 1) == (1, 3)
    with pytest.raises(GraphError):
        edge(2, 2)


def test_graph_rejects_bad_input():
    with pytest.raises(GraphError):
        Graph(3, ((0, 3),))
    with pytest.raises(GraphError):
        LiftedPair(path_graph(3), Graph(3, ((0, 1),)))


def test_k4_chordless_cycles():
    tri, quads = brute_cycles_k4()
    assert (tri, quads) == (4, 0)
    cyc = enumerate_chordless_cycles(complete_graph(4))
    assert sorted(len(c) for c in cyc) == [3] * tri


@given(lifted_pairs(max_nodes=6, max_edges=12))
def test_chordless_cycles_match_networkx(pair):
    g = pair.lifted
    ours = {c for c in enumerate_chordless_cycles(g)}
    theirs = {cycle_edges(c) for c in nx.chordless_cycles(to_nx(g)) if len(c) >= 3}
    assert ours == theirs
    assert len(ours) == len(enumerate_chordless_cycles(g))


@given(lifted_pairs(max_nodes=6, max_edges=12))
def test_all_cycles_match_networkx(pair):
    g = pair.lifted
    ours = {cycle_edges(c) for c in enumerate_cycles(g)}
    theirs = {cycle_edges(c) for c in nx.simple_cycles(to_nx(g)) if len(c) >= 3}
    assert ours == theirs


def test_k4_paths():
    g = complete_graph(4)
    for v, w in combinations(range(4), 2):
        brute = sum(1 for k in range(3) for mid in permutations(set(range(4)) - {v, w}, k))
        assert brute == 5
        assert len(enumerate_vw_paths(g, v, w)) == brute


@given(lifted_pairs(max_nodes=6, max_edges=12))
def test_paths_match_networkx(pair):
    g = pair.base
    for v, w in combinations(range(g.n), 2):
        ours = sorted(p.nodes for p in enumerate_vw_paths(g, v, w))
        theirs = sorted(tuple(p) for p in nx.all_simple_paths(to_nx(g), v, w))
        assert ours == theirs


def brute_min_cuts(g, v, w):
    """Edge subsets separating v and w with no separating proper subset."""
    seps = []
    for k in range(1, g.m + 1):
        for sub in combinations(g.edges, k):
            rest = [e for e in g.edges if e not in sub]
            lab = components(g.n, rest)
            if lab[v] != lab[w] and not any(set(s) < set(sub) for s in seps):
                seps.append(sub)
    return sorted(frozenset(s) for s in seps)


def test_k3_cuts():
    g = complete_graph(3)
    cuts = enumerate_vw_cuts(g, 0, 2)
    assert len(cuts) == 2
    assert set(cuts) == set(brute_min_cuts(g, 0, 2))
    assert frozenset({(0, 1), (0, 2)}) in cuts and frozenset({(0, 2), (1, 2)}) in cuts


@pytest.mark.parametrize("g", [cycle_graph(5), grid_graph(2, 3), complete_graph(4), path_graph(4)])
def test_cuts_match_brute_force(g):
    for v, w in [(0, g.n - 1), (0, 1)]:
        assert sorted(enumerate_vw_cuts(g, v, w)) == brute_min_cuts(g, v, w)


def test_cuts_need_connected_graph():
    with pytest.raises(GraphError):
        enumerate_vw_cuts(Graph(3, ((0, 1),)), 0, 2)


def path_intersection(g, v, w):
    paths = enumerate_vw_paths(g, v, w)
    out = set(paths[0].nodes)
    for p in paths[1:]:
        out &= set(p.nodes)
    return out


def test_cut_vertices_fig7i():
    fx = fig7i()
    g = fx.pair.base
    for v, w in combinations(range(g.n), 2):
        assert cut_vertices(g, v, w) == path_intersection(g, v, w)
    # node 1 touches f1 and f2; on the cycle 0-1-2-5-4-3 it separates nothing between 0 and 5
    assert 1 not in cut_vertices(g, 0, 5)
    assert cut_vertices(g, 0, 2) == path_intersection(g, 0, 2)


@given(lifted_pairs(max_nodes=6, max_edges=12))
def test_cut_vertices_are_path_intersection(pair):
    g = pair.base
    for v, w in combinations(range(g.n), 2):
        cv = cut_vertices(g, v, w)
        assert cv == path_intersection(g, v, w)
        assert all(separates(g, v, w, [u]) for u in cv)


def test_contract_k4_gives_triangle():
    h, relabel = contract_edge(complete_graph(4), (0, 1))
    assert (h.n, h.m) == (3, 3)
    assert nx.is_isomorphic(to_nx(h), nx.complete_graph(3))
    assert relabel[0] == relabel[1]


@given(lifted_pairs(max_nodes=6, max_edges=12))
def test_contract_matches_networkx(pair):
    g = pair.base
    e = g.edges[0]
    h, _ = contract_edge(g, e)
    ref = nx.contracted_nodes(to_nx(g), *e, self_loops=False)
    assert nx.is_isomorphic(to_nx(h), nx.Graph(ref))


def test_connectivity():
    assert is_connected(grid_graph(3, 4))
    assert not is_connected(Graph(4, ((0, 1), (2, 3))))
