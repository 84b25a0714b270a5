"""Corpus construction, fixture search and verification runs."""
import hashlib
import itertools
import random
import time
import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import families as fam
from . import io as dio
from .bits import elements, mask_of, popcount, popcounts
from .connectivity import bixby_split, is_3connected, table_is_3connected, three_separations_at
from .detach import find_detachable_pairs, graph_pair_status, pair_status
from .errors import (ArgumentError, ConstructionError, DetpairsError, LemmaViolation,
                     SamplingError, UnsupportedParametersError)
from .gfp import LinearRepGFp, kernel_mod_p
from .graphs import Graph, is_simple_3connected
from .matroid import DEFAULT_CAP, Provenance, _submodular_violation, _view, from_gfp_matrix, from_graph
from .recognizers import (accordion_lemmas_hold, classify_graph, classify_matroid,
                          recognize_spike, recognize_tag, replay)
from .structures import (fan_index, is_fan_ordering, is_mk4_separator, is_triangle,
                         is_wheel_like, maximal_fans, quads, start_kind, triads, triangles)

MIN_EDGES = 13
MAX_ATTEMPTS = 10**6
SUITES = ("rank_axioms", "lambda", "minor_lambda", "bixby", "tutte_triangle", "segment_quad",
          "vertical_separation", "fans", "accordion_lemmas", "graph_agreement")
SAMPLED_MASKS = 10**5
EXHAUSTIVE_LAMBDA_UP_TO = 16
EXHAUSTIVE_RANK_UP_TO = 12
LOCAL_SUITES_UP_TO = 14
AGREEMENT_ALL_PAIRS_UP_TO = 15
AGREEMENT_SAMPLED_PAIRS = 200


# corpus

@dataclass(frozen=True)
class Instance:
    """A corpus item; the matroid is rebuilt on demand so items stay cheap to ship."""
    id: str
    source: str  # sweep | fixture | random | catalog
    spec: fam.FamilySpec = None
    graph: Graph = None

    @property
    def is_graph(self):
        return self.graph is not None

    def matroid(self):
        if self.graph is not None:
            return from_graph(self.graph, allow_large=True)
        return fam.gen_matroid(self.spec, validate=False)

    @property
    def obj(self):
        return self.graph if self.graph is not None else self.matroid()

    def expected(self):
        if self.spec is None:
            return None
        tags = fam.expected_outcomes(self.spec)
        if self.spec.get("dualize"):
            tags = {fam.dual_tag(t) for t in tags}
        return tags

    def describe(self):
        if self.spec is not None:
            return f"{self.spec.family}:{self.spec.key()}"
        return "g6:" + hashlib.sha256(dio.graph6_encode(self.graph).encode()).hexdigest()[:16]


@dataclass
class CorpusConfig:
    sweeps: tuple = None  # FamilySpecs; None means default_sweep()
    sweep_range: tuple = (MIN_EDGES, 18)
    include_duals: bool = True
    include_fixtures: bool = True
    random_count: int = 300
    random_edges: tuple = (13, 16)
    random_vertices: tuple = (6, 10)
    seed: int = 0
    catalogs: tuple = ()
    catalog_limit: int = None
    suites: frozenset = frozenset(SUITES)
    minor_samples: int = 30
    timing: bool = False

    def __post_init__(self):
        for lo, hi in (self.sweep_range, self.random_edges):
            if not MIN_EDGES <= lo <= hi <= DEFAULT_CAP:
                raise ArgumentError(f"edge range ({lo}, {hi}) must lie within [{MIN_EDGES}, {DEFAULT_CAP}]")
        if self.random_count < 0:
            raise ArgumentError("random_count must be >= 0")
        lo, hi = self.random_vertices
        if not 4 <= lo <= hi:
            raise ArgumentError("vertex range must satisfy 4 <= lo <= hi")
        unknown = set(self.suites) - set(SUITES)
        if unknown:
            raise ArgumentError(f"unknown suites {sorted(unknown)}")


def _spec(family, **params):
    return fam.FamilySpec(family, params)


def _element_count(spec):
    f, p = spec.family, spec.params
    if f in fam.GRAPH_FAMILIES:
        return fam.gen_graph(spec).edge_count
    sizes = {
        "whirl": lambda: 2 * p["r"],
        "free_spike": lambda: 2 * p["legs"] + (2 if p.get("tipped") else 0),
        "hinged_triad_paddle": lambda: 1 + 3 * p["m"],
        "even_fan_paddle": lambda: 1 + 3 * p["m"],
        "quasi_triad_paddle": lambda: 3 * p["k"] + 4,
        "tri_paddle_copaddle": lambda: 3 * (p["s"] + p["t"]),
    }
    if f in sizes:
        return sizes[f]()
    return fam.gen_matroid(spec, validate=False).n


def _branch_lists():
    for k in (3, 4, 5):
        for br in itertools.combinations_with_replacement(range(7), k):
            br = list(br[::-1])
            try:
                fam.multi_wheel_branches(_spec("multi_wheel", branches=br))
            except DetpairsError:
                continue
            yield br


def default_sweep(lo=MIN_EDGES, hi=18):
    """Every generator instance with lo <= |E| <= hi, before dualizing."""
    cands = []
    cands += [_spec("wheel", n=n) for n in range(3, 13)]
    cands += [_spec("whirl", r=r) for r in range(3, 13)]
    cands += [_spec("free_spike", legs=n) for n in range(3, 13)]
    cands += [_spec("free_spike", legs=n, tipped=True) for n in range(3, 13)]
    cands += [_spec("mutant_wheel", n=n) for n in range(4, 12)]
    cands += [_spec("twisted_wheel", j=j, k=k) for j in range(10) for k in range(j + 1) if j + k >= 1]
    cands += [_spec("warped_wheel", j=j, k=k) for j in range(1, 10) for k in range(1, j + 1)]
    cands += [_spec("multi_wheel", branches=br) for br in _branch_lists()]
    cands += [_spec("stretched_wheel", n=n, k=k) for n in range(3, 12) for k in range(1, 10)]
    cands += [_spec("k3m", m=m) for m in range(2, 8)]
    cands += [_spec("k3m_prime", m=m) for m in range(2, 7)]
    cands += [_spec("k3m_doubleprime", m=m) for m in range(2, 7)]
    cands += [_spec("hinged_triad_paddle", m=m, hinged=h) for m in range(3, 7) for h in range(1, m + 1)]
    cands += [_spec("even_fan_paddle", m=m) for m in range(3, 7)]
    cands += [_spec("quasi_triad_paddle", petal=kind, k=k) for kind in ("quad", "near_quad") for k in range(2, 6)]
    cands += [_spec("tri_paddle_copaddle", s=s, t=t) for s in range(2, 6) for t in range(2, 6)]
    return [s for s in cands if lo <= _element_count(s) <= hi]


def fixture_specs(lo=MIN_EDGES, hi=18):
    out = []
    for family in ("even_fan_spike", "quasi_triad_paddle"):
        for key in fam.available_fixtures(family):
            spec = fam.FamilySpec(family, {**fam.parse_key(key), "fixture": True})
            if lo <= fam.load_fixture(family, key).n <= hi:
                out.append(spec)
    return out


def _dual_spec(spec):
    return fam.FamilySpec(spec.family, {**spec.params, "dualize": True})


def random_graph(rng, vertices, edges, attempts=MAX_ATTEMPTS):
    """Uniform simple graph on the given counts, resampled until 3-connected."""
    pairs = list(itertools.combinations(range(vertices), 2))
    if edges > len(pairs):
        raise ArgumentError(f"no simple graph has {vertices} vertices and {edges} edges")
    for _ in range(attempts):
        g = Graph(vertices, sorted(rng.sample(pairs, edges)))
        if is_simple_3connected(g):
            return g
    raise SamplingError(f"no 3-connected graph with {vertices} vertices and {edges} edges "
                        f"after {attempts} attempts")


def _random_slots(cfg):
    # (vertices, edges) combinations that can hold a 3-connected simple graph
    slots = []
    for e in range(cfg.random_edges[0], cfg.random_edges[1] + 1):
        for v in range(cfg.random_vertices[0], cfg.random_vertices[1] + 1):
            if 3 * v <= 2 * e <= v * (v - 1):
                slots.append((v, e))
    return slots


def random_instances(cfg):
    rng = random.Random(cfg.seed)
    slots = _random_slots(cfg)
    if cfg.random_count and not slots:
        raise ArgumentError("no vertex count in range admits a 3-connected graph with these edge counts")
    out = []
    for i in range(cfg.random_count):
        v, e = slots[i % len(slots)]
        out.append(Instance(f"random-{i:04d}", "random", graph=random_graph(rng, v, e)))
    return out


def read_catalog(path):
    text = Path(path).read_text() if path != "-" else __import__("sys").stdin.read()
    return dio.read_graph6_lines(text)


def catalog_instances(cfg):
    out = []
    for path in cfg.catalogs:
        name = Path(path).name
        for lineno, g in enumerate(read_catalog(path), 1):
            if MIN_EDGES <= g.edge_count <= DEFAULT_CAP:
                out.append(Instance(f"catalog:{name}:{lineno}", "catalog", graph=g))
    if cfg.catalog_limit is not None:
        out = out[: cfg.catalog_limit]
    return out


def build_corpus(cfg=None):
    cfg = cfg or CorpusConfig()
    specs = list(cfg.sweeps) if cfg.sweeps is not None else default_sweep(*cfg.sweep_range)
    if cfg.include_fixtures:
        specs += fixture_specs(*cfg.sweep_range)
    items = []
    for s in specs:
        src = "fixture" if s.get("fixture") else "sweep"
        graph = fam.gen_graph(s) if s.family in fam.GRAPH_FAMILIES and not s.get("dualize") else None
        items.append(Instance(f"{s.family}[{s.key()}]", src, s, graph))
        if cfg.include_duals and not s.get("dualize"):
            items.append(Instance(f"{s.family}[{s.key()}]*", src, _dual_spec(s)))
    items += random_instances(cfg)
    items += catalog_instances(cfg)
    return items


# invariant suites; each returns a list of finding strings

def _rng_for(inst_id, seed):
    return np.random.default_rng([zlib.crc32(inst_id.encode()), seed])


def _sample_masks(rng, n, count):
    return rng.integers(0, 1 << n, size=count, dtype=np.int64)


def suite_rank_axioms(m, rng):
    r = m.ranks.astype(np.int16)
    n = m.n
    if r[0] != 0:
        return ["rank_axioms: r(empty) != 0"]
    if n <= EXHAUSTIVE_RANK_UP_TO:
        masks = np.arange(1 << n, dtype=np.int64)
        for e in range(n):
            bit = 1 << e
            x = masks[(masks & bit) == 0]
            d = r[x | bit] - r[x]
            if ((d < 0) | (d > 1)).any():
                return [f"rank_axioms: unit increase fails adding {e}"]
        bad = _submodular_violation(m.ranks, n)
        return [f"rank_axioms: submodularity fails at {bad}"] if bad else []
    x = _sample_masks(rng, n, SAMPLED_MASKS)
    a = np.int64(1) << rng.integers(0, n, size=x.size)
    b = np.int64(1) << rng.integers(0, n, size=x.size)
    d = r[x | a] - r[x]
    if ((d < 0) | (d > 1)).any():
        return ["rank_axioms: unit increase fails on a sampled triple"]
    if (r[x | a] + r[x | b] < r[x | a | b] + r[x]).any():
        return ["rank_axioms: submodularity fails on a sampled triple"]
    return []


def suite_lambda(m, rng):
    lam = m.lam_table.astype(np.int16)
    dlam = m.dual().lam_table.astype(np.int16)
    if m.n <= EXHAUSTIVE_LAMBDA_UP_TO:
        masks = slice(None)
    else:
        masks = _sample_masks(rng, m.n, SAMPLED_MASKS)
    out = []
    if not np.array_equal(lam[masks], lam[::-1][masks]):
        out.append("lambda: lambda(X) != lambda(E-X)")
    if not np.array_equal(lam[masks], dlam[masks]):
        out.append("lambda: lambda differs between M and M*")
    return out


def suite_minor_lambda(m, rng, samples):
    """Connectivity after removing e, and after adding e to X, against the closure cases."""
    n = m.n
    r = m.ranks.astype(np.int16)
    full = (1 << n) - 1
    rfull = r[full]

    def corank(x):
        return x.bit_count() + r[full ^ x] - rfull

    lam = lambda x: r[x] + r[full ^ x] - rfull
    out = []
    for _ in range(samples):
        e = int(rng.integers(n))
        x = int(rng.integers(1 << n)) & ~(1 << e)
        eb = 1 << e
        rest = full ^ eb ^ x
        in_cl = r[x | eb] == r[x]
        in_cocl = corank(x | eb) == corank(x)
        loop = r[eb] == 0
        coloop = r[full ^ eb] < rfull
        lam_c = (r[x | eb] - r[eb]) + (r[rest | eb] - r[eb]) - (rfull - r[eb])
        want = lam(x) - 1 if in_cl and not loop else lam(x)
        if lam_c != want:
            out.append(f"minor_lambda: contraction of {e} on {elements(x)}")
        lam_d = r[x] + r[rest] - r[full ^ eb]
        want = lam(x) - 1 if in_cocl and not coloop else lam(x)
        if lam_d != want:
            out.append(f"minor_lambda: deletion of {e} on {elements(x)}")
        delta = {(True, True): -1, (True, False): 0, (False, True): 0, (False, False): 1}
        if lam(x | eb) - lam(x) != delta[(bool(in_cl), bool(in_cocl))]:
            out.append(f"minor_lambda: closure table at {e} and {elements(x)}")
    return out


def _delete_ok(m, e):
    return table_is_3connected(_view(m.ranks, m.n, 1 << e, 0), m.n - 1)


def _contract_ok(m, e):
    return table_is_3connected(_view(m.ranks, m.n, 0, 1 << e), m.n - 1)


def suite_bixby(m):
    out = []
    for e in range(m.n):
        try:
            bixby_split(m, e)
        except LemmaViolation as exc:
            out.append(f"bixby: {exc}")
    return out


def suite_tutte_triangle(m):
    out = []
    for dual, sets, other, removable in ((False, triangles(m), triads(m), _delete_ok),
                                         (True, triads(m), triangles(m), _contract_ok)):
        ok = {e: removable(m, e) for e in range(m.n)}
        for t in sets:
            trio = elements(t)
            for e, e2 in itertools.permutations(trio, 2):
                if ok[e] or ok[e2]:
                    continue
                e3 = (set(trio) - {e, e2}).pop()
                pair_a, pair_b = mask_of((e, e2)), mask_of((e, e3))
                if not any((s & pair_a) == pair_a or (s & pair_b) == pair_b for s in other):
                    kind = "triad" if dual else "triangle"
                    out.append(f"tutte_triangle: {kind} {trio} at {e}, {e2}")
    return out


def suite_segment_quad(m):
    out = []
    seen = set()
    for a, b in itertools.combinations(range(m.n), 2):
        line = m.closure(mask_of((a, b)))
        if line in seen or popcount(line) < 4 or m.rank(line) != 2:
            continue
        seen.add(line)
        for e in elements(line):
            if not _delete_ok(m, e):
                out.append(f"segment_quad: {e} in segment {elements(line)} not deletable")
    in_triad = 0
    for t in triads(m):
        in_triad |= t
    for q in quads(m):
        for e in elements(q & ~in_triad):
            if not _delete_ok(m, e):
                out.append(f"segment_quad: {e} in quad {elements(q)} not deletable")
    return out


def suite_vertical_separation(m):
    out = []
    for e in range(m.n):
        for mode in ("vertical", "cyclic"):
            try:
                three_separations_at(m, e, mode, check=True)
            except LemmaViolation as exc:
                out.append(f"vertical_separation: {exc}")
    return out


def _fan_rank_ok(m, seq):
    k = len(seq)
    s = mask_of(seq)
    lo, hi = k // 2 + 1, (k + 1) // 2 + 1
    if start_kind(m, seq) == "triangle":
        return m.rank(s) == lo and m.corank(s) == hi
    return m.rank(s) == hi and m.corank(s) == lo


def suite_fans(m):
    out = []
    for s, orders in fan_index(m).items():
        for seq in orders:
            if not is_fan_ordering(m, seq):
                out.append(f"fans: reported ordering {seq} is not a fan")
            elif m.n >= len(seq) + 2:
                if not _fan_rank_ok(m, seq) or m.lam(s) != 2:
                    out.append(f"fans: rank formula fails on {seq}")
    if is_wheel_like(m):
        return out
    fans = [f for f in maximal_fans(m) if len(f) >= 3]
    tri, tds = triangles(m), triads(m)
    for f in fans:
        seq = f.ordering
        for first, second in ((seq[0], seq[1:3]), (seq[-1], seq[-3:-1][::-1])):
            kind = start_kind(m, (first, *second))
            pool = tri if kind == "triad" else tds
            if any(t >> first & 1 for t in pool):
                out.append(f"fans: end {first} of maximal fan {seq} lies in a "
                           f"{'triangle' if kind == 'triad' else 'triad'}")
        if len(seq) >= 4:
            k = len(seq)
            for i in range(k - 1):
                pair = mask_of(seq[i:i + 2])
                allowed = {mask_of(seq[j:j + 3]) for j in (i - 1, i) if 0 <= j and j + 3 <= k}
                for pool in (tri, tds):
                    for t in pool:
                        if t & pair == pair and t not in allowed:
                            out.append(f"fans: {elements(t)} meets maximal fan {seq} at {seq[i:i + 2]}")
    if m.n >= 8:
        for f1, f2 in itertools.permutations(fans, 2):
            if len(f1) < 4 or f1.mask == f2.mask:
                continue
            ends = mask_of((f1.ordering[0], f1.ordering[-1]))
            meet = f1.mask & f2.mask
            if meet & ~ends == 0:
                continue
            union = f1.mask | f2.mask
            if popcount(union) != 6 or not (is_mk4_separator(m, union) or is_mk4_separator(m.dual(), union)):
                out.append(f"fans: maximal fans {f1.ordering} and {f2.ordering} meet inside")
    return out


def suite_graph_agreement(g, m, rng):
    out = []
    if is_simple_3connected(g) != is_3connected(m):
        out.append("graph_agreement: 3-connectivity differs between graph and matroid")
        return out
    pairs = list(itertools.combinations(range(g.edge_count), 2))
    if g.edge_count > AGREEMENT_ALL_PAIRS_UP_TO:
        pick = rng.choice(len(pairs), size=min(AGREEMENT_SAMPLED_PAIRS, len(pairs)), replace=False)
        pairs = [pairs[i] for i in sorted(pick)]
    for e, f in pairs:
        gv, mv = graph_pair_status(g, e, f), pair_status(m, e, f)
        if (gv.delete_ok, gv.contract_ok) != (mv.delete_ok, mv.contract_ok):
            out.append(f"graph_agreement: pair ({e}, {f}) graph {gv} matroid {mv}")
    return out


# verification

@dataclass
class VerifyJob:
    instance: Instance
    suites: frozenset
    seed: int
    minor_samples: int
    timing: bool


def _classify(inst, m):
    """Classification of the instance, plus its matroid-level matches for replay."""
    c = classify_matroid(m, exhaustive=True)
    gc = classify_graph(inst.graph, exhaustive=True) if inst.is_graph else None
    return c, gc


def _family_checks(inst, m, c, gc):
    out = []
    expected = inst.expected()
    tags = [t for t, _ in c.matches]
    if "detachable_pair" in tags:
        out.append(f"no_pair: family member has detachable pair {c.matches[0][1]}")
    missing = sorted(set(expected) - set(tags))
    if missing:
        out.append(f"family: expected {missing}, matched {tags}")
    if gc is not None:
        gtags = [t for t, _ in gc.matches]
        if inst.spec.family not in gtags and not (inst.spec.family == "mutant_wheel" and "mutant_wheel" in gtags):
            out.append(f"family: graph outcome {inst.spec.family} not among {gtags}")
    return out


def _converse_checks(c):
    tags = [t for t, _ in c.matches]
    if len(tags) == 0 or (tags == ["unclassified"]):
        return ["converse: neither a detachable pair nor a family member"]
    families = [t for t in tags if t not in ("detachable_pair", "unclassified")]
    if not families and "detachable_pair" not in tags:
        return ["converse: no detachable pair for a non-member"]
    return []


def run_job(job):
    inst = job.instance
    start = time.perf_counter()
    findings = []
    outcome, witness = "error", None
    m = inst.matroid()
    rng = _rng_for(inst.id, job.seed)
    try:
        c, gc = _classify(inst, m)
        shown = gc if gc is not None else c
        outcome, witness = shown.outcome, shown.witness
        for cl, where in ((c, "matroid"), (gc, "graph")):
            if cl is not None and not cl.exclusive:
                findings.append(f"exclusivity: {where} items {cl.items} subsumed {cl.subsumed}")
        for tag, cert in c.matches:
            if tag != "detachable_pair" and not replay(m, tag, cert):
                findings.append(f"replay: {tag} certificate fails")
        if inst.spec is not None:
            findings += _family_checks(inst, m, c, gc)
        else:
            findings += _converse_checks(gc if gc is not None else c)
        has_pair = any(t == "detachable_pair" for t, _ in c.matches)
        if not has_pair and not (triangles(m) or triads(m) or recognize_spike(m)):
            findings.append("few_triangles: no pair, no triangle, no triad and not a spike")
        if "accordion_lemmas" in job.suites:
            for tag, cert in c.matches:
                if tag.startswith("accordion"):
                    host = m.dual() if tag.endswith("_dual") else m
                    if not accordion_lemmas_hold(host, cert):
                        findings.append("accordion_lemmas: end values fail")
    except DetpairsError as exc:
        findings.append(f"error: {type(exc).__name__}: {exc}")
    findings += _suites(inst, m, job, rng)
    ms = round((time.perf_counter() - start) * 1000, 3) if job.timing else 0.0
    rec = dio.ReportRecord(inst.id, inst.source, inst.describe(), m.n, outcome,
                           dio.to_jsonable(witness), ms, findings=findings)
    return rec


def _suites(inst, m, job, rng):
    s = job.suites
    out = []
    if "rank_axioms" in s:
        out += suite_rank_axioms(m, rng)
    if "lambda" in s:
        out += suite_lambda(m, rng)
    if "minor_lambda" in s:
        out += suite_minor_lambda(m, rng, job.minor_samples)
    conn = is_3connected(m)
    if conn and m.n <= LOCAL_SUITES_UP_TO:
        if "bixby" in s:
            out += suite_bixby(m)
        if "vertical_separation" in s:
            out += suite_vertical_separation(m)
    if conn and "tutte_triangle" in s:
        out += suite_tutte_triangle(m)
    if conn and "segment_quad" in s:
        out += suite_segment_quad(m)
    if conn and "fans" in s:
        out += suite_fans(m)
    if inst.is_graph and "graph_agreement" in s:
        out += suite_graph_agreement(inst.graph, m, rng)
    return out


@dataclass
class VerificationReport:
    records: list
    summary: dict = field(default_factory=dict)

    @property
    def counterexamples(self):
        return self.summary.get("counterexamples", 0)


def summarize(records):
    by_check = {}
    for r in records:
        for f in r.findings:
            key = f.split(":", 1)[0]
            by_check[key] = by_check.get(key, 0) + 1
    sources = {}
    for r in records:
        sources[r.source] = sources.get(r.source, 0) + 1
    outcomes = {}
    for r in records:
        outcomes[r.outcome] = outcomes.get(r.outcome, 0) + 1
    return {
        "instances": len(records),
        "counterexamples": sum(len(r.findings) for r in records),
        "failing_instances": sum(1 for r in records if r.findings),
        "by_check": dict(sorted(by_check.items())),
        "by_source": dict(sorted(sources.items())),
        "by_outcome": dict(sorted(outcomes.items())),
    }


def verify_theorems(corpus, cfg=None, workers=1):
    cfg = cfg or CorpusConfig()
    if not corpus:
        raise ArgumentError("corpus is empty")
    jobs = [VerifyJob(inst, frozenset(cfg.suites), cfg.seed, cfg.minor_samples, cfg.timing)
            for inst in corpus]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            records = list(pool.map(run_job, jobs, chunksize=4))
    else:
        records = [run_job(j) for j in jobs]
    return VerificationReport(records, summarize(records))


# fixture search

def _functional(cols, support, p):
    """Values at every column of a row-space vector vanishing off support."""
    dim = len(cols[0])
    outside = [cols[j] for j in range(len(cols)) if j not in support]
    for z in kernel_mod_p(outside, p, dim):
        vals = [sum(a * b for a, b in zip(z, c)) % p for c in cols]
        if any(vals[j] for j in support):
            return vals
    return None


def grow_even_fan_spike(petals, tipped, rng):
    """Spike whose petals are lengthened into even fans, two elements at a time.

    Each step coextends along the petal's last pair (a, b) by s, with the
    new row taken from a cocircuit through (a, b), then adds t parallel to
    the old b. That makes (.., a, b, s, t) a fan and moves the cocircuit
    through (a, b) onto (s, t).
    """
    k = len(petals)
    base = fam.free_spike(k, tipped)
    p = base.provenance.source.prime
    cols = [list(base.provenance.source.column(j)) for j in range(base.n)]
    names = list(base.names)
    seqs = [[names.index(f"x{i + 1}"), names.index(f"y{i + 1}")] for i in range(k)]
    cotip = names.index("cotip") if tipped else None
    steps = [i for i in range(k) for _ in range((petals[i] - 2) // 2)]
    rng.shuffle(steps)
    for i in steps:
        a, b = seqs[i][-2:]
        if tipped:
            support = {a, b, cotip}
        else:
            support = {a, b, *seqs[(i + 1) % k][-2:]}
        vals = _functional(cols, support, p)
        if vals is None or not (vals[a] and vals[b]):
            return None
        scale = rng.randrange(1, p)
        t = [scale * v % p for v in cols[b]] + [0]
        for c in cols:
            c.append(0)
        cols[a][-1], cols[b][-1] = vals[a], vals[b]
        s = [0] * len(cols[0])
        s[-1] = 1
        cols += [s, t]
        seqs[i] += [len(cols) - 2, len(cols) - 1]
        names += [f"s{i + 1}.{len(seqs[i]) // 2 - 1}", f"t{i + 1}.{len(seqs[i]) // 2 - 1}"]
    rep = LinearRepGFp.from_columns(p, cols)
    m = from_gfp_matrix(rep, tuple(names), allow_large=True)
    m.provenance = Provenance("linear-gfp", rep, {"petals": list(petals), "tipped": tipped})
    return m


def _quad_candidate(params, rng):
    p = fam.LINEAR_PRIME
    coeffs = [rng.randrange(1, p) for _ in range(3)]
    return fam.quasi_quad(params["k"], near=params["petal"] == "near_quad", alpha=coeffs[0],
                          beta=coeffs[1], gamma=coeffs[2])


def _fixture_candidate(family, params, rng):
    if family == "even_fan_spike":
        petals = params.get("petals")
        if not isinstance(petals, (list, tuple)) or len(petals) < 3 or any(
                not isinstance(x, int) or x < 2 or x % 2 for x in petals):
            raise ArgumentError("even_fan_spike fixtures need petals: at least 3 even sizes >= 2")
        return grow_even_fan_spike(list(petals), bool(params.get("tipped")), rng)
    if family == "quasi_triad_paddle":
        if params.get("petal") not in ("quad", "near_quad") or not isinstance(params.get("k"), int):
            raise ArgumentError("quasi_triad_paddle fixtures need petal quad or near_quad and k")
        return _quad_candidate(params, rng)
    raise UnsupportedParametersError(f"no fixture search for {family}; it has a direct construction")


def fixture_dir():
    return Path(__file__).resolve().parent / "fixtures"


def fixture_search(family, params, budget=200, seed=0, out_dir=None):
    """Seeded search for a validated member; returns the written path or None."""
    if family in fam.GRAPH_FAMILIES:
        raise ArgumentError(f"{family} is graphic; use the graph generator")
    params = {k: v for k, v in params.items() if k != "dualize" and not (k == "tipped" and not v)}
    spec = fam.FamilySpec(family, params)
    expected = fam.expected_outcomes(spec)
    rng = random.Random(seed)
    for _ in range(budget):
        m = _fixture_candidate(family, params, rng)
        if m is None or not is_3connected(m):
            continue
        if find_detachable_pairs(m, "first"):
            continue
        if any(recognize_tag(m, t) is None for t in expected):
            continue
        root = Path(out_dir) if out_dir else fixture_dir()
        path = root / family / f"{spec.key()}.matroid"
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(dio.write_matroid(m, "gfp"))
        return path
    return None


DEFAULT_FIXTURES = (
    ("even_fan_spike", {"petals": [4, 2, 2, 2, 2, 2]}),
    ("even_fan_spike", {"petals": [4, 4, 2, 2, 2]}),
    ("even_fan_spike", {"petals": [6, 2, 2, 2, 2]}),
    ("even_fan_spike", {"petals": [4, 4, 4, 2]}),
    ("even_fan_spike", {"petals": [6, 4, 4]}),
    ("even_fan_spike", {"petals": [4, 4, 4, 4]}),
    ("even_fan_spike", {"petals": [6, 6, 4]}),
    ("even_fan_spike", {"petals": [4, 4, 4]}),
    ("even_fan_spike", {"petals": [6, 2, 2, 2], "tipped": True}),
    ("even_fan_spike", {"petals": [6, 4, 4], "tipped": True}),
    ("even_fan_spike", {"petals": [4, 4, 4], "tipped": True}),
    ("even_fan_spike", {"petals": [6, 4, 2], "tipped": True}),
    ("even_fan_spike", {"petals": [4, 2, 2, 2, 2], "tipped": True}),
    ("even_fan_spike", {"petals": [4, 4, 4, 4], "tipped": True}),
    ("quasi_triad_paddle", {"petal": "quad", "k": 3}),
    ("quasi_triad_paddle", {"petal": "near_quad", "k": 3}),
)


def build_default_fixtures(out_dir=None, seed=0):
    results = []
    for family, params in DEFAULT_FIXTURES:
        results.append((family, params, fixture_search(family, params, seed=seed, out_dir=out_dir)))
    return results
