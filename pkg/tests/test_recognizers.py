import random
from itertools import combinations

import pytest

from detpairs import families as fam
from detpairs.families import FamilySpec
from detpairs.errors import PreconditionError
from detpairs.graphs import Graph, add_edge
from detpairs.harness import random_graph
from detpairs.matroid import from_graph, relax
from detpairs.recognizers import (accordion_lemmas_hold, classify_graph, classify_matroid,
                                  recognize_accordion, recognize_even_fan_paddle,
                                  recognize_even_fan_spike, recognize_hinged_triad_paddle,
                                  recognize_quasi_triad_paddle, recognize_spike,
                                  recognize_tri_paddle_copaddle, recognize_triad_paddle,
                                  recognize_wheel_whirl, replay)


def graph_of(family, **params):
    return fam.gen_graph(FamilySpec(family, params))


def graphic(family, **params):
    return from_graph(graph_of(family, **params))


def wheel_and_rim(n):
    g = graph_of("wheel", n=n)
    rim = sum(1 << i for i, lab in enumerate(g.labels) if lab.startswith("rim"))
    return from_graph(g), rim


def test_wheel_recognized():
    assert recognize_wheel_whirl(graphic("wheel", n=7))["kind"] == "wheel"


def test_relaxed_wheel_is_whirl():
    m, rim = wheel_and_rim(7)
    assert recognize_wheel_whirl(relax(m, rim))["kind"] == "whirl"


def test_k33_is_not_wheel_like():
    assert recognize_wheel_whirl(graphic("k3m", m=3)) is None


def test_free_spike_has_seven_legs():
    assert len(recognize_spike(fam.free_spike(7))) == 7


def test_wheel_is_not_a_spike():
    assert recognize_spike(graphic("wheel", n=7)) is None


def test_long_petal_spike_only_as_even_fan_spike():
    m = fam.load_fixture("even_fan_spike", "petals=6-4-4")
    assert recognize_spike(m) is None
    cert = recognize_even_fan_spike(m)
    assert cert["variant"] == "nondegenerate"
    assert sorted(len(p) for p in cert["petals"]) == [4, 4, 6]


def test_warped_wheel_is_degenerate_spike():
    assert recognize_even_fan_spike(graphic("warped_wheel", j=2, k=2))["variant"] == "degenerate"


def test_twisted_wheel_is_tip_cotip_spike():
    assert recognize_even_fan_spike(graphic("twisted_wheel", j=2, k=2))["variant"] == "tip_cotip"


def test_k35_is_not_even_fan_spike():
    assert recognize_even_fan_spike(graphic("k3m", m=5)) is None


def test_multi_wheel_is_even_fan_paddle():
    assert recognize_even_fan_paddle(graphic("multi_wheel", branches=[2, 2, 1])) is not None


def test_stretched_wheel_dual_is_even_fan_paddle():
    assert recognize_even_fan_paddle(graphic("stretched_wheel", n=5, k=1).dual()) is not None


def test_wheel_is_not_even_fan_paddle():
    assert recognize_even_fan_paddle(graphic("wheel", n=7)) is None


def test_triad_paddles():
    assert len(recognize_triad_paddle(graphic("k3m", m=5))["triads"]) == 5
    assert len(recognize_triad_paddle(graphic("k3m", m=3))["triads"]) == 3
    assert recognize_triad_paddle(graphic("wheel", n=3)) is None


def test_hinged_triad_paddle():
    assert recognize_hinged_triad_paddle(fam.hinged_triad_paddle(4)) is not None
    assert recognize_hinged_triad_paddle(graphic("k3m", m=4)) is None
    assert recognize_hinged_triad_paddle(fam.even_fan_paddle_line(4)) is None


@pytest.mark.parametrize("family,kind", [("k3m_doubleprime", "augmented"), ("k3m_prime", "co_augmented")])
def test_graphic_quasi_triad_paddles(family, kind):
    assert recognize_quasi_triad_paddle(graphic(family, m=4))["kinds"] == [kind]


@pytest.mark.parametrize("key,kind", [("k=3,petal=quad", "quad"), ("k=3,petal=near_quad", "near_quad")])
def test_fixture_quasi_triad_paddles(key, kind):
    m = fam.load_fixture("quasi_triad_paddle", key)
    cert = recognize_quasi_triad_paddle(m)
    assert cert["kinds"] == [kind]
    assert replay(m, f"quasi_triad_paddle({kind})", cert)


def test_tri_paddle_copaddle():
    cert = recognize_tri_paddle_copaddle(fam.tri_paddle_copaddle(2, 2))
    assert (cert["s"], cert["t"]) == (2, 2)
    assert recognize_tri_paddle_copaddle(graphic("k3m", m=4)) is None


def test_mutant_wheel_is_fan_fan_accordion():
    m = graphic("mutant_wheel", n=5)
    assert m.n == 14
    cert = recognize_accordion(m)
    assert (cert.g_kind, cert.h_kind) == ("fan", "fan")


@pytest.mark.parametrize("n", [5, 6, 7])
def test_mutant_wheel_lemma_values(n):
    m = graphic("mutant_wheel", n=n)
    assert accordion_lemmas_hold(m, recognize_accordion(m))


def test_tipped_spike_and_wheel_are_not_accordions():
    assert recognize_accordion(fam.free_spike(6, tipped=True)) is None
    assert recognize_accordion(graphic("wheel", n=7)) is None


def test_classify_k6_gives_pair_witness():
    g = Graph(6, list(combinations(range(6), 2)))
    c = classify_matroid(from_graph(g))
    assert c.outcome == "detachable_pair"
    assert c.witness.detachable and replay(from_graph(g), "detachable_pair", c.witness)


def test_classify_whirl():
    assert classify_matroid(fam.gen_matroid(FamilySpec("whirl", {"r": 7}))).outcome == "whirl"


def test_classify_free_spike_as_even_fan_spike():
    assert classify_matroid(fam.free_spike(7)).outcome == "even_fan_spike"


def test_classify_graph_wheel():
    assert classify_graph(graph_of("wheel", n=7)).outcome == "wheel"


def test_classify_graph_stretched_wheel():
    c = classify_graph(graph_of("stretched_wheel", n=5, k=1), exhaustive=True)
    assert "stretched_wheel" in [t for t, _ in c.matches]
    assert c.exclusive


def test_classify_random_graph_has_pair():
    g = random_graph(random.Random(3), 8, 14)
    assert classify_graph(g).outcome == "detachable_pair"


def test_injected_chord_gives_detachable_pair():
    g = graph_of("wheel", n=7)
    chorded = add_edge(g, 1, 4, "chord")
    c = classify_graph(chorded, exhaustive=True)
    assert c.outcome == "detachable_pair"
    assert [t for t, _ in c.matches] == ["detachable_pair"]


def test_classify_preconditions():
    with pytest.raises(PreconditionError):
        classify_matroid(graphic("wheel", n=5))
    g = graph_of("wheel", n=7)
    with pytest.raises(PreconditionError):
        classify_graph(Graph(g.vertex_count, g.edges + (g.edges[0],)))


MEMBERS = [
    ("wheel", {"n": 7}), ("whirl", {"r": 7}), ("mutant_wheel", {"n": 6}),
    ("twisted_wheel", {"j": 2, "k": 2}), ("warped_wheel", {"j": 2, "k": 2}),
    ("multi_wheel", {"branches": [2, 2, 1]}), ("stretched_wheel", {"n": 5, "k": 1}),
    ("k3m", {"m": 5}), ("k3m_prime", {"m": 3}), ("k3m_doubleprime", {"m": 3}),
    ("free_spike", {"legs": 7}), ("free_spike", {"legs": 6, "tipped": True}),
    ("hinged_triad_paddle", {"m": 5}), ("tri_paddle_copaddle", {"s": 2, "t": 3}),
    ("even_fan_spike", {"petals": [4, 4, 4, 2], "fixture": True}),
    ("quasi_triad_paddle", {"k": 3, "petal": "quad", "fixture": True}),
]


@pytest.mark.parametrize("family,params", MEMBERS)
def test_exclusive_replayable_and_dual_coherent(family, params):
    spec = FamilySpec(family, params)
    m = fam.gen_matroid(spec)
    c = classify_matroid(m, exhaustive=True)
    assert c.exclusive
    assert {t for t, _ in c.matches} >= fam.expected_outcomes(spec)
    for tag, cert in c.matches:
        assert replay(m, tag, cert)
    d = classify_matroid(m.dual(), exhaustive=True)
    assert sorted(t for t, _ in d.matches) == sorted(fam.dual_tag(t) for t, _ in c.matches)


def test_wheel_overlap_is_explained_not_hidden():
    c = classify_matroid(graphic("wheel", n=7), exhaustive=True)
    tags = [t for t, _ in c.matches]
    assert tags[0] == "wheel" and "even_fan_spike_tip_cotip" in tags
    assert c.items == (2, 4) and c.subsumed == (4,)
