from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from detpairs import families as fam
from detpairs.bits import elements, mask_of, popcount
from detpairs.errors import ArgumentError
from detpairs.graphs import Graph, add_vertex
from detpairs.matroid import from_graph, uniform
from detpairs.recognizers import recognize_spike, recognize_triad_paddle
from detpairs.structures import (Fan, fan_ends, fan_orderings, flower_classify, is_fan_ordering,
                                 is_mk4_separator, maximal_fans, quads, small_dependents, triads,
                                 triangles)

from oracles import graph_rank, subsets, to_mask

K4 = Graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])


def graph_of(family, **params):
    return fam.gen_graph(fam.FamilySpec(family, params))


def test_wheel_is_one_cyclic_fan():
    m = from_graph(graph_of("wheel", n=6))
    fans = maximal_fans(m)
    assert len(fans) == 1
    assert fans[0].wheel and fans[0].mask == m.full


def test_k33_doubleprime_has_length5_fan():
    m = from_graph(graph_of("k3m_doubleprime", m=3))
    assert any(len(f) == 5 for f in maximal_fans(m))


def test_free_spike_has_no_fans():
    m = fam.free_spike(4)
    assert not triangles(m) and not triads(m)
    assert maximal_fans(m) == []


def test_length4_fan_ends_survive_middle_swap():
    m = from_graph(graph_of("k3m_doubleprime", m=3))
    four = [f for f in maximal_fans(m) if len(f) == 4]
    assert four
    e1, e2, e3, e4 = four[0].ordering
    assert is_fan_ordering(m, (e1, e3, e2, e4))
    assert fan_ends((e1, e2, e3, e4)) == fan_ends((e1, e3, e2, e4)) == ((e1, e4), True)


def test_length5_fan_has_unique_ends():
    m = from_graph(graph_of("k3m_doubleprime", m=3))
    five = next(f for f in maximal_fans(m) if len(f) == 5)
    ends = {(s[0], s[-1]) for s in fan_orderings(m, five.mask)}
    assert {frozenset(e) for e in ends} == {frozenset(fan_ends(five)[0])}


def test_pairs_never_claimed_maximal():
    m = from_graph(K4)
    pairs = [f for f in maximal_fans(m, include_pairs=True) if len(f) == 2]
    assert pairs and not any(f.maximal for f in pairs)


def test_mk4_ground_set_is_separator():
    assert is_mk4_separator(from_graph(K4), 0b111111)


def test_u26_has_no_separator():
    m = uniform(2, 6)
    assert not is_mk4_separator(m, m.full)


def test_parallel_connection_copy_is_separator():
    # generalized parallel connection of M(K4) with M(W4) along a triangle
    w = graph_of("wheel", n=4)
    hub_tri = [i for i, (u, v) in enumerate(w.edges) if {u, v} <= {0, 1, 2}]
    g, _ = add_vertex(w, [0, 1, 2], ["x", "y", "z"])
    m = from_graph(g)
    copy = mask_of(hub_tri + [g.edge_count - 3, g.edge_count - 2, g.edge_count - 1])
    assert is_mk4_separator(m, copy)
    others = [c for c in combinations(range(m.n), 6) if mask_of(c) != copy]
    assert not any(is_mk4_separator(m, mask_of(c)) for c in others[:200] if popcount(mask_of(c) & copy) < 3)


def test_separator_needs_six_elements():
    with pytest.raises(ArgumentError):
        is_mk4_separator(from_graph(K4), 0b111)


def test_k34_triads_form_a_paddle():
    m = from_graph(graph_of("k3m", m=4))
    parts = [mask_of(t) for t in recognize_triad_paddle(m)["triads"]]
    rep = flower_classify(m, parts)
    assert rep.is_anemone and rep.subkind == "paddle"
    assert flower_classify(m.dual(), parts).subkind == "copaddle"


def test_free_spike_legs_form_spike_like_anemone():
    m = fam.free_spike(5)
    legs = [mask_of(p) for p in recognize_spike(m)]
    rep = flower_classify(m, legs)
    assert rep.is_anemone and rep.subkind == "spike-like"


def test_unbalanced_bipartition_is_not_a_flower():
    m = from_graph(graph_of("wheel", n=6))
    side = mask_of([0, 3, 5, 8])
    assert m.lam(side) > 2
    assert not flower_classify(m, [side, m.full ^ side]).is_flower


def test_partition_errors():
    m = from_graph(K4)
    with pytest.raises(ArgumentError):
        flower_classify(m, [0b000111, 0b000110])
    with pytest.raises(ArgumentError):
        flower_classify(m, [0b000111])


@pytest.mark.parametrize("family,params", [
    ("mutant_wheel", {"n": 6}), ("k3m_prime", {"m": 3}), ("k3m_doubleprime", {"m": 4}),
    ("twisted_wheel", {"j": 2, "k": 2}), ("stretched_wheel", {"n": 5, "k": 1}),
])
def test_fan_rank_formulas(family, params):
    m = from_graph(graph_of(family, **params))
    for f in maximal_fans(m):
        if f.wheel or m.n < len(f) + 2:
            continue
        k = len(f)
        low, high = k // 2 + 1, (k + 1) // 2 + 1
        if f.start_kind == "triangle":
            assert (m.rank(f.mask), m.corank(f.mask)) == (low, high)
        else:
            assert (m.rank(f.mask), m.corank(f.mask)) == (high, low)
        assert m.lam(f.mask) == 2


@st.composite
def small_graphs(draw):
    n = draw(st.integers(3, 6))
    edges = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), min_size=3, max_size=9))
    return Graph(n, edges)


@given(small_graphs())
def test_small_circuits_match_brute_force(g):
    m = from_graph(g)

    def rank_of(s):
        return graph_rank(g.vertex_count, g.edges, s)

    expected = set()
    for s in subsets(m.n):
        if 0 < len(s) <= 4 and rank_of(s) == len(s) - 1 and all(
                rank_of(tuple(x for x in s if x != e)) == len(s) - 1 for e in s):
            expected.add(to_mask(s))
    assert {c.mask for c in small_dependents(m, "circuit", 4)} == expected


@given(small_graphs())
def test_reported_fans_are_fans(g):
    m = from_graph(g)
    for f in maximal_fans(m):
        if not f.wheel:
            assert is_fan_ordering(m, f.ordering)
    assert quads(m) == quads(m.dual())
