from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given

from liftedmc.fixtures import complete_graph, cycle_graph, fig1, grid_graph, path_graph
from liftedmc.graph import GraphError, is_connected_mask, mask_of
from liftedmc.partitions import (
    Decomposition,
    NotAMulticut,
    decomposition_to_multicut,
    enumerate_decompositions,
    enumerate_decompositions_rgs,
    enumerate_multicuts,
    enumerate_set_partitions,
    is_multicut,
    is_multicut_by_cycles,
    multicut_to_decomposition,
    multicut_to_equivalence,
    subset_from_bits,
    subset_to_bits,
)

from conftest import brute_partitions, lifted_pairs


def brute_decompositions(g):
    out = set()
    for part in brute_partitions(range(g.n)):
        if all(is_connected_mask(g, mask_of(b)) for b in part):
            out.add(tuple(sorted(tuple(sorted(b)) for b in part)))
    return out


def brute_multicuts(g):
    """Edge subsets meeting no cycle in exactly one edge (networkx cycles)."""
    h = nx.Graph(list(g.edges))
    h.add_nodes_from(range(g.n))
    cycles = [frozenset(tuple(sorted(e)) for e in zip(c, c[1:] + c[:1]))
              for c in nx.simple_cycles(h) if len(c) >= 3]
    out = set()
    for k in range(g.m + 1):
        for sub in combinations(g.edges, k):
            s = set(sub)
            if all(len(c & s) != 1 for c in cycles):
                out.add(frozenset(sub))
    return out


def test_fig1_decomposition_cuts_seven_edges():
    g, blocks = fig1()
    pi = Decomposition(g, blocks)
    m = decomposition_to_multicut(pi)
    brute = sum(1 for u, v in g.edges if not any(u in b and v in b for b in blocks))
    assert len(m) == brute == 7
    assert multicut_to_decomposition(g, m).blocks == pi.blocks


def test_decomposition_rejects_disconnected_block():
    with pytest.raises(GraphError):
        Decomposition(path_graph(3), ((0, 2), (1,)))


def test_c4_opposite_edges_is_multicut():
    g = cycle_graph(4)
    assert is_multicut(g, [(0, 1), (2, 3)])
    assert not is_multicut(g, [(0, 1)])


def test_not_a_multicut_has_witness():
    g = cycle_graph(4)
    with pytest.raises(NotAMulticut) as info:
        multicut_to_decomposition(g, [(0, 1)])
    assert info.value.witness == (0, 1)
    assert info.value.path[0] == 0 and info.value.path[-1] == 1


@pytest.mark.parametrize("g, expected", [(path_graph(3), 4), (cycle_graph(4), 12), (complete_graph(3), 5)])
def test_multicut_counts(g, expected):
    assert len(brute_decompositions(g)) == expected
    assert len(enumerate_multicuts(g)) == expected
    assert set(enumerate_multicuts(g)) == brute_multicuts(g)


def test_set_partitions_bell_numbers():
    bell = [1, 1, 2, 5, 15, 52, 203]
    assert [sum(1 for _ in enumerate_set_partitions(n)) for n in range(7)] == bell


@given(lifted_pairs(max_nodes=6, max_edges=12))
def test_union_find_enumeration_matches_rgs(pair):
    g = pair.base
    fast = [d.blocks for d in enumerate_decompositions(g)]
    slow = sorted(d.blocks for d in enumerate_decompositions_rgs(g))
    assert fast == slow
    assert set(fast) == brute_decompositions(g)


@given(lifted_pairs(max_nodes=5, max_edges=8))
def test_multicut_tests_agree(pair):
    g = pair.lifted
    ms = set(enumerate_multicuts(g))
    for k in range(g.m + 1):
        for sub in combinations(g.edges, k):
            a = is_multicut(g, sub)
            assert a == is_multicut_by_cycles(g, sub) == is_multicut_by_cycles(g, sub, chordless_only=False)
            assert a == (frozenset(sub) in ms)


@given(lifted_pairs(max_nodes=6, max_edges=12))
def test_roundtrip_bijection(pair):
    g = pair.base
    for m in enumerate_multicuts(g):
        pi = multicut_to_decomposition(g, m)
        assert decomposition_to_multicut(pi) == m
        assert subset_from_bits(g, subset_to_bits(g, m)) == m


def test_equivalence_on_k4():
    g = complete_graph(4)
    m = [(0, 1), (0, 2), (0, 3)]
    eq = multicut_to_equivalence(g, m)
    assert eq.classes() == [(0,), (1, 2, 3)]
    assert eq.related(1, 3) and not eq.related(0, 2)


def test_equivalence_needs_complete_graph():
    with pytest.raises(GraphError):
        multicut_to_equivalence(grid_graph(2, 2), [])
