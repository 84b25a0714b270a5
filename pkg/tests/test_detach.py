import random
from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from detpairs import families as fam
from detpairs.detach import (all_pair_verdicts, find_detachable_pairs, find_graph_detachable_pairs,
                             graph_pair_status, pair_status)
from detpairs.errors import ArgumentError, PreconditionError
from detpairs.graphs import Graph, is_simple_3connected
from detpairs.harness import random_graph
from detpairs.matroid import from_graph, uniform

from oracles import brute_3connected, graph_rank


def graph_of(family, **params):
    return fam.gen_graph(fam.FamilySpec(family, params))


K6 = Graph(6, list(combinations(range(6), 2)))


def test_wheel7_no_pair():
    m = from_graph(graph_of("wheel", n=7))
    assert not any(v.detachable for v in all_pair_verdicts(m))


def test_k6_has_a_pair():
    assert find_detachable_pairs(from_graph(K6), "first")


def test_u26_delete_any_two():
    m = uniform(2, 6)
    for e, f in combinations(range(6), 2):
        assert pair_status(m, e, f).delete_ok


def test_k35_no_pair():
    assert find_detachable_pairs(from_graph(graph_of("k3m", m=5))) == []


def test_free_spike_rank7_no_pair():
    assert find_detachable_pairs(fam.free_spike(7)) == []


def test_random_nonfamily_graphic_has_pair():
    rng = random.Random(7)
    for edges in (13, 14, 15, 16):
        g = random_graph(rng, 8, edges)
        assert find_detachable_pairs(from_graph(g), "first")


def test_graph_wheel7_no_pair():
    g = graph_of("wheel", n=7)
    assert find_graph_detachable_pairs(g) == []


def test_graph_k6_has_pair():
    assert find_graph_detachable_pairs(K6, "first")


def test_graph_k34_doubleprime_no_pair():
    assert find_graph_detachable_pairs(graph_of("k3m_doubleprime", m=4)) == []


def test_multi_wheel_13_edges_no_pair():
    g = graph_of("multi_wheel", branches=[1, 1, 1, 1])
    assert g.edge_count == 13
    assert find_graph_detachable_pairs(g) == []


def test_stretched_wheel_no_pair():
    g = graph_of("stretched_wheel", n=5, k=1)
    assert g.edge_count >= 13
    assert find_graph_detachable_pairs(g) == []


def test_first_mode_returns_lexicographically_first():
    m = from_graph(K6)
    assert find_detachable_pairs(m, "first") == find_detachable_pairs(m, "all")[:1]


def test_pair_argument_errors():
    m = from_graph(K6)
    with pytest.raises(ArgumentError):
        pair_status(m, 1, 1)
    with pytest.raises(ArgumentError):
        pair_status(m, 0, 15)
    with pytest.raises(ArgumentError):
        find_detachable_pairs(m, "some")
    with pytest.raises(PreconditionError):
        find_detachable_pairs(uniform(2, 5))


# (vertices, edges) pairs for which simple 3-connected graphs exist
FEASIBLE = {6: [(4, 6)], 8: [(5, 8)], 9: [(5, 9), (6, 9)], 13: [(7, 13), (8, 13)],
            14: [(7, 14), (8, 14), (9, 14)], 15: [(8, 15), (9, 15), (10, 15)]}


@st.composite
def graphs_3conn(draw, sizes):
    v, e = draw(st.sampled_from([ve for k in sizes for ve in FEASIBLE[k]]))
    rng = random.Random(draw(st.integers(0, 10 ** 6)))
    return random_graph(rng, v, e)


@settings(max_examples=25)
@given(graphs_3conn((13, 14, 15)), st.data())
def test_graph_and_matroid_pair_status_agree(g, data):
    m = from_graph(g)
    for _ in range(10):
        e, f = sorted(data.draw(st.lists(st.integers(0, g.edge_count - 1), min_size=2, max_size=2, unique=True)))
        assert graph_pair_status(g, e, f) == pair_status(m, e, f)


@settings(max_examples=15)
@given(graphs_3conn((6, 8, 9)))
def test_pair_status_matches_definition(g):
    m = from_graph(g)
    n = m.n
    for e, f in combinations(range(n), 2):
        keep = [i for i in range(n) if i not in (e, f)]
        dele = brute_3connected(lambda s: graph_rank(g.vertex_count, g.edges, [keep[i] for i in s]), n - 2)
        full = graph_rank(g.vertex_count, g.edges, [e, f])

        def contracted(s):
            return graph_rank(g.vertex_count, g.edges, [keep[i] for i in s] + [e, f]) - full

        con = brute_3connected(contracted, n - 2)
        v = pair_status(m, e, f)
        assert (v.delete_ok, v.contract_ok) == (dele, con)


@settings(max_examples=10)
@given(graphs_3conn((13, 14)))
def test_pairs_swap_flags_under_duality(g):
    m = from_graph(g)
    here = {(v.e, v.f): (v.delete_ok, v.contract_ok) for v in find_detachable_pairs(m)}
    there = {(v.e, v.f): (v.contract_ok, v.delete_ok) for v in find_detachable_pairs(m.dual())}
    assert here == there


def test_random_graph_helper_yields_3connected():
    rng = random.Random(0)
    g = random_graph(rng, 7, 13)
    assert is_simple_3connected(g)
    assert nx.node_connectivity(nx.Graph(g.edges)) >= 3
