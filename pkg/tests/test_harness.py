import random
from importlib import resources

import networkx as nx
import pytest

from detpairs import families as fam
from detpairs import harness
from detpairs.errors import ArgumentError, SamplingError, UnsupportedParametersError
from detpairs.families import FamilySpec
from detpairs.graphs import add_edge, is_simple_3connected
from detpairs.harness import (CorpusConfig, Instance, VerifyJob, build_corpus, fixture_search,
                              random_graph, run_job, verify_theorems)
from detpairs.io import read_graph6_lines, read_matroid, write_report
from detpairs.recognizers import recognize_tag

from oracles import nx_simple_3connected

QUIET = frozenset()


def small_cfg(**kw):
    base = dict(sweeps=(), include_duals=False, include_fixtures=False, random_count=0)
    base.update(kw)
    return CorpusConfig(**base)


def test_wheel_sweep_sizes():
    specs = tuple(FamilySpec("wheel", {"n": n}) for n in (7, 8, 9))
    corpus = build_corpus(small_cfg(sweeps=specs))
    assert [i.matroid().n for i in corpus] == [14, 16, 18]


def test_duals_added_when_requested():
    specs = (FamilySpec("k3m", {"m": 5}),)
    corpus = build_corpus(small_cfg(sweeps=specs, include_duals=True))
    assert [i.id for i in corpus] == ["k3m[m=5]", "k3m[m=5]*"]
    assert corpus[1].expected() == {"triad_paddle_dual"}


def test_random_sample_is_seed_deterministic():
    cfg = small_cfg(random_count=6, random_edges=(13, 13))
    first = [i.graph for i in build_corpus(cfg)]
    assert first == [i.graph for i in build_corpus(cfg)]
    assert all(g.edge_count == 13 and is_simple_3connected(g) for g in first)
    other = [i.graph for i in build_corpus(small_cfg(random_count=6, random_edges=(13, 13), seed=1))]
    assert other != first


def test_sampler_gives_up_after_attempt_cap():
    with pytest.raises(SamplingError):
        random_graph(random.Random(0), 10, 13, attempts=5)
    with pytest.raises(ArgumentError):
        random_graph(random.Random(0), 5, 11)


def test_config_validation():
    with pytest.raises(ArgumentError):
        CorpusConfig(random_edges=(10, 16))
    with pytest.raises(ArgumentError):
        CorpusConfig(sweep_range=(13, 40))
    with pytest.raises(ArgumentError):
        CorpusConfig(random_count=-1)
    with pytest.raises(ArgumentError):
        CorpusConfig(suites=frozenset({"astrology"}))


def test_shipped_catalog_is_3connected():
    text = resources.files("detpairs").joinpath("data", "catalog3c.g6").read_text()
    graphs = read_graph6_lines(text)
    assert len(graphs) >= 1000
    for g in graphs[::25]:
        assert nx_simple_3connected(g)
    assert all(is_simple_3connected(g) for g in graphs)


def test_catalog_ingest_keeps_desk_sized_graphs(tmp_path):
    text = resources.files("detpairs").joinpath("data", "catalog3c.g6").read_text()
    path = tmp_path / "cat.g6"
    path.write_text(text)
    corpus = build_corpus(small_cfg(catalogs=(str(path),), catalog_limit=20))
    assert len(corpus) == 20
    assert all(i.source == "catalog" and i.graph.edge_count >= 13 for i in corpus)


def job(inst, suites=QUIET):
    return VerifyJob(inst, frozenset(suites), 0, 5, False)


@pytest.mark.parametrize("n", [5, 6, 7])
def test_mutant_wheels_pass_lemma_suite(n):
    spec = FamilySpec("mutant_wheel", {"n": n})
    rec = run_job(job(Instance(f"mw{n}", "sweep", spec, fam.gen_graph(spec)), {"accordion_lemmas"}))
    assert rec.outcome == "mutant_wheel" and rec.findings == []


def test_injected_chord_is_a_detachable_pair_not_a_family():
    g = add_edge(fam.gen_graph(FamilySpec("wheel", {"n": 7})), 2, 5, "chord")
    rec = run_job(job(Instance("injected", "injected", graph=g)))
    assert rec.outcome == "detachable_pair" and rec.findings == []


def test_wrong_expectation_becomes_a_finding():
    # a non-member passed off as a wheel must be flagged, not crash
    g = add_edge(fam.gen_graph(FamilySpec("wheel", {"n": 7})), 2, 5, "chord")
    rec = run_job(job(Instance("fake", "sweep", FamilySpec("wheel", {"n": 7}), g)))
    assert any(f.startswith("no_pair") for f in rec.findings)


def test_all_suites_on_small_corpus_and_idempotence():
    specs = (FamilySpec("wheel", {"n": 7}), FamilySpec("k3m_prime", {"m": 3}))
    cfg = small_cfg(sweeps=specs, include_duals=True, random_count=3)
    corpus = build_corpus(cfg)
    first = verify_theorems(corpus, cfg)
    assert first.summary["counterexamples"] == 0
    again = verify_theorems(build_corpus(cfg), cfg, workers=2)
    assert write_report(first.records) == write_report(again.records)


def test_empty_corpus_rejected():
    with pytest.raises(ArgumentError):
        verify_theorems([], small_cfg())


def test_fixture_search_even_fan_spike(tmp_path):
    path = fixture_search("even_fan_spike", {"petals": [4, 4, 4]}, out_dir=tmp_path)
    assert path is not None and path.name == "petals=4-4-4.matroid"
    m = read_matroid(path.read_text())
    assert recognize_tag(m, "even_fan_spike")["variant"] == "nondegenerate"


def test_fixture_search_quad_petal(tmp_path):
    path = fixture_search("quasi_triad_paddle", {"petal": "quad", "k": 3}, out_dir=tmp_path)
    m = read_matroid(path.read_text())
    assert m.n == 13
    assert recognize_tag(m, "quasi_triad_paddle(quad)")["kinds"] == ["quad"]


def test_fixture_search_budget_exhaustion_reports_absence(tmp_path):
    assert fixture_search("even_fan_spike", {"petals": [4, 4, 4]}, budget=0, out_dir=tmp_path) is None
    assert not any(tmp_path.iterdir())


def test_fixture_search_rejects_graphic_and_direct_families():
    with pytest.raises(ArgumentError):
        fixture_search("wheel", {"n": 7})
    with pytest.raises(UnsupportedParametersError):
        fixture_search("whirl", {"r": 7})


def test_shipped_fixtures_match_a_fresh_search(tmp_path):
    path = fixture_search("even_fan_spike", {"petals": [6, 4, 4]}, out_dir=tmp_path)
    shipped = resources.files("detpairs").joinpath("fixtures", "even_fan_spike", "petals=6-4-4.matroid")
    assert path.read_text() == shipped.read_text()
