import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from detpairs import families as fam
from detpairs.bits import elements, mask_of, popcount
from detpairs.connectivity import is_3connected
from detpairs.detach import find_detachable_pairs
from detpairs.errors import (ArgumentError, CapError, DegenerateMatroidError, InvalidBasesError,
                             PreconditionError)
from detpairs.gfp import LinearRepGFp
from detpairs.graphs import Graph
from detpairs.matroid import (BasesList, DEFAULT_CAP, Matroid, closure, connectivity, direct_sum,
                              from_bases, from_gfp_matrix, from_graph, local_conn, minor, relax,
                              simplify_cosimplify, uniform)
from detpairs.recognizers import recognize_spike, recognize_wheel_whirl
from detpairs.structures import maximal_fans, triangles

from oracles import columns_of, graph_rank, matrix_rank_mod, subsets, to_mask


def wheel_graph(n):
    return fam.gen_graph(fam.FamilySpec("wheel", {"n": n}))


def rim_mask(g):
    return mask_of(i for i, lab in enumerate(g.labels) if lab.startswith("rim"))


K4 = Graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])


@st.composite
def small_graphs(draw, max_vertices=6, max_edges=9):
    n = draw(st.integers(2, max_vertices))
    edges = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)),
                          min_size=1, max_size=max_edges))
    return Graph(n, edges)


@st.composite
def small_matrices(draw):
    p = draw(st.sampled_from([2, 3, 5, 7]))
    r = draw(st.integers(1, 4))
    n = draw(st.integers(1, 8))
    rows = draw(st.lists(st.lists(st.integers(0, p - 1), min_size=n, max_size=n), min_size=r, max_size=r))
    return LinearRepGFp(p, tuple(tuple(x) for x in rows))


# construction examples

def test_k4_full_rank_is_three():
    assert from_graph(K4).rank(0b111111) == 3


def test_single_edge_rank_one():
    m = from_graph(K4)
    assert all(m.rank(1 << e) == 1 for e in range(6))


def test_wheel4_rim_rank_three():
    g = wheel_graph(4)
    rim = rim_mask(g)
    assert popcount(rim) == 4
    assert from_graph(g).rank(rim) == 3 == graph_rank(g.vertex_count, g.edges, elements(rim))


def test_identity_over_gf5():
    rep = LinearRepGFp(5, ((1, 0, 0), (0, 1, 0), (0, 0, 1)))
    assert from_gfp_matrix(rep).rank(0b111) == 3


def test_equal_columns_over_gf2_are_parallel():
    rep = LinearRepGFp(2, ((1, 1, 0), (0, 0, 1)))
    assert from_gfp_matrix(rep).rank(0b011) == 1


def test_rank4_free_spike_transversals_have_full_rank():
    m = fam.free_spike(4)
    pairs = recognize_spike(m)
    assert pairs is not None and len(pairs) == 4
    legs = [list(p) for p in pairs]
    cols = columns_of(m.provenance.source.rows)
    for choice in itertools.product(*legs):
        assert m.rank(mask_of(choice)) == 4
        assert matrix_rank_mod([cols[e] for e in choice], m.provenance.source.prime) == 4


def test_uniform_from_all_two_subsets():
    bases = [mask_of(c) for c in itertools.combinations(range(4), 2)]
    m = from_bases(BasesList(2, frozenset(bases)), 4)
    assert m.r == 2 and m == uniform(2, 4)


def test_single_basis_gives_free_part_plus_loops():
    m = from_bases(BasesList(2, frozenset({0b0011})), 4)
    assert m.rank(0b0011) == 2
    assert m.rank(0b0100) == 0 and m.rank(0b1000) == 0


def test_wheel4_has_45_bases():
    g = wheel_graph(4)
    import networkx as nx
    trees = round(nx.number_of_spanning_trees(nx.Graph(g.edges)))
    assert trees == 45
    assert len(from_graph(g).bases()) == 45


def test_invalid_bases_rejected_with_witness():
    with pytest.raises(InvalidBasesError) as info:
        from_bases(BasesList(2, frozenset({0b0011, 0b1100})), 4)
    assert info.value.witness is not None


def test_fan_rank_example():
    m = from_graph(wheel_graph(5))
    # a five-element fan starting with a triangle inside the wheel
    fan = maximal_fans(m)[0].ordering
    tri = triangles(m)
    for start in range(len(fan)):
        seq = [fan[(start + i) % len(fan)] for i in range(5)]
        if mask_of(seq[:3]) in tri:
            assert m.rank(mask_of(seq)) == 3
            break
    else:
        pytest.fail("no triangle-first window")


def test_triangle_lambda_is_two_in_3connected():
    m = from_graph(wheel_graph(5))
    assert all(m.lam(t) == 2 for t in triangles(m))


def test_delete_coloop_drops_rank():
    m = from_graph(Graph(4, [(0, 1), (1, 2), (0, 2), (2, 3)]))
    coloop = 3
    assert m.corank(1 << coloop) == 0
    assert minor(m, "delete", 1 << coloop).r == m.r - 1


def test_relax_wheel3_rim_adds_one_basis():
    g = wheel_graph(3)
    m = from_graph(g)
    w = relax(m, rim_mask(g))
    assert len(w.bases()) == len(m.bases()) + 1
    assert set(map(int, w.bases())) - set(map(int, m.bases())) == {rim_mask(g)}


def test_relax_wheel7_rim_gives_whirl_without_pairs():
    g = wheel_graph(7)
    w = relax(from_graph(g), rim_mask(g))
    assert recognize_wheel_whirl(w)["kind"] == "whirl"
    assert find_detachable_pairs(w, "first") == []


def test_relax_rejects_non_hyperplane_circuit():
    m = from_graph(wheel_graph(5))
    t = next(iter(triangles(m)))
    with pytest.raises(PreconditionError):
        relax(m, t)


def test_relax_rejects_non_circuit():
    with pytest.raises(PreconditionError):
        relax(from_graph(K4), 0b11)


def test_si_keeps_lowest_index_of_parallel_class():
    g = Graph(3, [(0, 1), (0, 1), (1, 2), (0, 2), (2, 2)])
    s = simplify_cosimplify(from_graph(g), "si")
    assert s.n == 3
    assert s.provenance.info["index_map"] == (0, 2, 3)


def test_co_is_dual_of_si_of_dual():
    g = Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)])
    m = from_graph(g)
    assert simplify_cosimplify(m, "co") == simplify_cosimplify(m.dual(), "si").dual()


def test_u23_counts_as_3connected():
    assert is_3connected(uniform(2, 3))


def test_cap_enforced_and_overridable():
    with pytest.raises(CapError):
        Matroid(np.zeros(1 << (DEFAULT_CAP + 1), dtype=np.uint8))
    big = Matroid(np.zeros(1 << (DEFAULT_CAP + 1), dtype=np.uint8), allow_large=True)
    assert big.n == DEFAULT_CAP + 1
    with pytest.raises(CapError):
        Matroid(np.zeros(1 << 25, dtype=np.uint8), allow_large=True)


def test_masks_outside_ground_set_rejected():
    m = from_graph(K4)
    with pytest.raises(ArgumentError):
        m.rank(1 << 6)
    with pytest.raises(ArgumentError):
        m.rank(-1)


def test_minor_of_everything_is_degenerate():
    m = from_graph(K4)
    with pytest.raises(DegenerateMatroidError):
        minor(m, "delete", m.full)
    with pytest.raises(ArgumentError):
        minor(m, "delete", 0)


def test_direct_sum_of_triangles_has_rank_four():
    t = uniform(2, 3)
    s = direct_sum(t, t)
    assert s.r == 4 and s.lam(0b000111) == 0


def test_local_conn_and_closure_wrappers():
    m = from_graph(K4)
    # edges 0,1,3 form the triangle on vertices 0,1,2
    assert closure(m, 0b000011) == 0b001011
    assert local_conn(m, 0b000011, 0b001000) == 1
    assert connectivity(m, 0b001011) == 2


# properties against independent oracles

@given(small_graphs())
def test_graphic_ranks_match_component_count(g):
    m = from_graph(g)
    for s in subsets(g.edge_count):
        assert m.rank(to_mask(s)) == graph_rank(g.vertex_count, g.edges, s)


@given(small_matrices())
def test_linear_ranks_match_elimination(rep):
    m = from_gfp_matrix(rep)
    cols = columns_of(rep.rows)
    for s in subsets(rep.ncols):
        assert m.rank(to_mask(s)) == matrix_rank_mod([cols[j] for j in s], rep.prime)


def rank_axioms_hold(m):
    r = m.ranks.astype(int)
    if r[0] != 0:
        return False
    for x in range(1 << m.n):
        for e in range(m.n):
            if not x >> e & 1:
                y = x | 1 << e
                if not r[x] <= r[y] <= r[x] + 1:
                    return False
                for f in range(e + 1, m.n):
                    if not x >> f & 1 and r[y] + r[x | 1 << f] < r[y | 1 << f] + r[x]:
                        return False
    return True


@given(small_graphs())
def test_rank_axioms_graphic(g):
    assert rank_axioms_hold(from_graph(g))


@given(small_matrices())
def test_rank_axioms_linear(rep):
    assert rank_axioms_hold(from_gfp_matrix(rep))


@given(small_graphs())
def test_lambda_symmetric_and_dual_invariant(g):
    m = from_graph(g)
    d = m.dual()
    for x in range(1 << m.n):
        assert m.lam(x) == m.lam(m.full ^ x) == d.lam(x)


@given(small_graphs())
def test_dual_is_an_involution(g):
    m = from_graph(g)
    assert Matroid(m.dual_ranks).dual() == m


@given(small_graphs(), st.data())
def test_minor_duality(g, data):
    m = from_graph(g)
    if m.n < 2:
        return
    e = data.draw(st.integers(0, m.n - 1))
    s = 1 << e
    assert minor(m, "contract", s).dual() == minor(m.dual(), "delete", s)


@given(small_graphs(), st.data())
def test_graph_minor_commutes_with_matroid_minor(g, data):
    from detpairs.graphs import graph_minor
    if g.edge_count < 2:
        return
    e = data.draw(st.integers(0, g.edge_count - 1))
    mode = data.draw(st.sampled_from(["delete", "contract"]))
    assert from_graph(graph_minor(g, mode, e)) == minor(from_graph(g), mode, 1 << e)


@given(small_matrices())
def test_bases_roundtrip_is_identity(rep):
    m = from_gfp_matrix(rep)
    back = from_bases(BasesList(m.r, frozenset(int(b) for b in m.bases())), m.n)
    assert back == m


@given(small_graphs(max_vertices=5, max_edges=7), st.data())
def test_minor_lambda_closure_rule(g, data):
    """Contracting e lowers lambda(X) by one exactly when e is in cl(X) and is not a loop."""
    m = from_graph(g)
    if m.n < 2:
        return
    e = data.draw(st.integers(0, m.n - 1))
    x = data.draw(st.integers(0, m.full)) & ~(1 << e)
    c = minor(m, "contract", 1 << e)
    keep = [i for i in range(m.n) if i != e]
    xm = mask_of(keep.index(i) for i in elements(x))
    in_cl = m.rank(x | 1 << e) == m.rank(x)
    loop = m.rank(1 << e) == 0
    drop = m.lam(x) - c.lam(xm)
    assert drop in (0, 1)
    assert (drop == 1) == (in_cl and not loop)
