"""Recognizers for the matroids and graphs with no detachable pairs.

Each recognizer searches for a certificate and only returns it after the
certificate passes a replay check that uses rank lookups alone. The replay
checks (check_*) are public so callers can re-validate a witness
independently of how it was found.
"""
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, permutations

import numpy as np

from .bits import elements, lowbit, mask_of, popcount
from .connectivity import is_3connected
from .detach import find_detachable_pairs, find_graph_detachable_pairs
from .errors import ArgumentError, LemmaViolation, PreconditionError, SearchCapExceeded
from .families import is_family_graph
from .graphs import Graph, is_simple_3connected
from .matroid import from_graph
from .structures import (circuits4, cyclic_fan_ordering, fan_index, fan_orderings,
                         flower_classify, is_fan_ordering, is_triad, is_triangle,
                         maximal_fan_masks, quads, triads, triangles)

NODE_CAP = 10 ** 6
MIN_CLASSIFY_SIZE = 13
PETAL_KINDS = ("augmented", "co_augmented", "quad", "near_quad")


@dataclass
class Classification:
    outcome: str
    witness: object = None
    matches: list = field(default_factory=list)  # (tag, certificate) for every family matched
    items: tuple = ()  # outcome items matched
    subsumed: tuple = ()  # items matched only through a known containment

    @property
    def exclusive(self):
        return len(set(self.items) - set(self.subsumed)) == 1


@dataclass(frozen=True)
class AccordionCert:
    g: int
    g_kind: str  # fan | quad | triangle
    g_order: tuple
    fan: tuple
    h: int
    h_kind: str  # fan | quad | triad
    h_order: tuple


class _Budget:
    def __init__(self, cap=NODE_CAP):
        self.cap = cap
        self.left = cap

    def tick(self):
        self.left -= 1
        if self.left < 0:
            raise SearchCapExceeded(f"search exceeded {self.cap} nodes", self.cap)


def _covers(universe, pieces, compat, budget, leftover_max=0):
    """Exact covers of universe by pairwise compatible pieces.

    Up to leftover_max elements may stay uncovered; yields (pieces, leftover).
    """
    by_elem = {}
    for p in pieces:
        for e in elements(p):
            by_elem.setdefault(e, []).append(p)
    memo = {}

    def ok(p, q):
        key = (p, q) if p < q else (q, p)
        if key not in memo:
            memo[key] = compat(p, q)
        return memo[key]

    chosen = []

    def rec(rest, left):
        budget.tick()
        if rest == 0:
            yield list(chosen), left
            return
        e = lowbit(rest)
        for p in by_elem.get(e, ()):
            if p & ~rest:
                continue
            if all(ok(p, q) for q in chosen):
                chosen.append(p)
                yield from rec(rest & ~p, left)
                chosen.pop()
        if popcount(left) < leftover_max:
            yield from rec(rest & ~(1 << e), left | (1 << e))

    yield from rec(universe, 0)


# fan orderings

def fan_variants(m, seq):
    """Valid fan orderings of set(seq) obtainable from seq.

    Length >= 5 orderings are unique up to reversal; length 4 also allows the
    middle pair swapped; length 3 allows every permutation.
    """
    seq = tuple(seq)
    if len(seq) <= 3:
        cands = set(permutations(seq))
    else:
        cands = {seq, seq[::-1]}
        if len(seq) == 4:
            a, b, c, d = seq
            cands |= {(a, c, b, d), (d, b, c, a)}
    return sorted(s for s in cands if is_fan_ordering(m, s))


def _any_ordering(m, mask):
    orders = fan_orderings(m, mask)
    return orders[0] if orders else None


def _triad_start(m, seq):
    if len(seq) == 2:
        return [tuple(seq)]
    return [s for s in fan_variants(m, seq) if is_triad(m, mask_of(s[:3]))]


def _ending_at(m, seq, x):
    if len(seq) == 2:
        return [s for s in (tuple(seq), tuple(seq)[::-1]) if s[-1] == x]
    return [s for s in fan_variants(m, seq) if s[-1] == x]


def _no_4fan(m, tri, dual=False):
    """The triangle (triad if dual) lies in no 4-element fan."""
    other = triangles(m) if dual else triads(m)
    return all(popcount(t & tri) != 2 for t in other)


def restrict_table(ranks, elems):
    """Rank table of the restriction to elems, element j standing for elems[j]."""
    idx = np.zeros(1, dtype=np.int64)
    for e in elems:
        idx = np.concatenate([idx, idx + (1 << e)])
    return ranks[idx]


@lru_cache(maxsize=16)
def _k3m_table(mcount):
    edges = [(a, 3 + i) for i in range(mcount) for a in range(3)]
    return from_graph(Graph(3 + mcount, edges)).ranks.tobytes()


@lru_cache(maxsize=1)
def _k23_tables():
    base = np.frombuffer(_k3m_table(2), dtype=np.uint8)
    out = set()
    for perm in permutations(range(6)):
        out.add(restrict_table(base, perm).tobytes())
    return frozenset(out)


def is_mk23_restriction(m, six, ranks=None):
    ranks = m.ranks if ranks is None else ranks
    return restrict_table(ranks, elements(six)).tobytes() in _k23_tables()


def _label_triads(ranks, parts):
    """Order each triad to match the first one through the 4-circuits of K_{3,m}."""
    first = tuple(elements(parts[0]))
    out = [first]
    for p in parts[1:]:
        found = None
        for perm in permutations(elements(p)):
            if all(ranks[(1 << first[a]) | (1 << first[b]) | (1 << perm[a]) | (1 << perm[b])] == 3
                   for a, b in ((0, 1), (0, 2), (1, 2))):
                found = perm
                break
        if found is None:
            return None
        out.append(tuple(found))
    return out


def check_triad_paddle(m, labelled, ranks=None, ground=None):
    """The labelled triads give an isomorphism onto M(K_{3,m}).

    ranks and ground allow the check on a restriction given by a parent table.
    """
    ranks = m.ranks if ranks is None else ranks
    ground = m.full if ground is None else ground
    flat = [e for t in labelled for e in t]
    if len(labelled) < 2 or mask_of(flat) != ground or len(flat) != popcount(ground):
        return False
    table = restrict_table(ranks, flat)
    return table.tobytes() == _k3m_table(len(labelled))


# wheels and whirls

def check_wheel_whirl(m, cert):
    seq = tuple(cert["ordering"])
    n = len(seq)
    if n < 4 or n % 2 or mask_of(seq) != m.full or len(set(seq)) != n:
        return False
    trip = [mask_of((seq[i], seq[(i + 1) % n], seq[(i + 2) % n])) for i in range(n)]
    if not (is_triangle(m, trip[0]) or is_triad(m, trip[0])):
        return False
    for a, b in zip(trip, trip[1:] + trip[:1]):
        if is_triangle(m, a) and not is_triad(m, b):
            return False
        if is_triad(m, a) and not is_triangle(m, b):
            return False
    rim = [e for e in seq if sum(1 for t in trip if (t >> e) & 1 and is_triad(m, t)) == 2]
    kind = "wheel" if not m.is_independent(mask_of(rim)) else "whirl"
    return kind == cert["kind"] and sorted(rim) == sorted(cert["rim"])


def recognize_wheel_whirl(m):
    if m.n < 6 or m.n % 2:
        return None
    seq = cyclic_fan_ordering(m)
    if seq is None:
        return None
    n = len(seq)
    trip = [mask_of((seq[i], seq[(i + 1) % n], seq[(i + 2) % n])) for i in range(n)]
    rim = sorted(e for e in seq if sum(1 for t in trip if (t >> e) & 1 and is_triad(m, t)) == 2)
    kind = "wheel" if not m.is_independent(mask_of(rim)) else "whirl"
    cert = {"kind": kind, "ordering": tuple(seq), "rim": tuple(rim)}
    return cert if check_wheel_whirl(m, cert) else None


# spikes and even-fan-spikes

def recognize_spike(m):
    """Leg pairs of a (tipless) spike, found through quad incidence."""
    if m.n < 8 or m.n % 2:
        return None
    qs = quads(m)
    count = {}
    for q in qs:
        for a, b in combinations(elements(q), 2):
            count[(a, b)] = count.get((a, b), 0) + 1
    partner = {}
    for e in range(m.n):
        best, bestc = None, 1
        for f in range(m.n):
            if f != e:
                c = count.get((min(e, f), max(e, f)), 0)
                if c > bestc:
                    best, bestc = f, c
        if best is None:
            return None
        partner[e] = best
    if any(partner[partner[e]] != e for e in partner):
        return None
    legs = sorted({(min(e, f), max(e, f)) for e, f in partner.items()})
    if any(mask_of(a + b) not in qs for a, b in combinations(legs, 2)):
        return None
    return legs


def _efs_pair_ok(m, si, sj):
    for p in _triad_start(m, si):
        for q in _triad_start(m, sj):
            if m.is_circuit(mask_of(p[:2] + q[:2])) and m.is_cocircuit(mask_of(p[-2:] + q[-2:])):
                return True
    return False


def _even_fan_or_pair(m, seq):
    if len(seq) == 2:
        return seq[0] != seq[1]
    return len(seq) >= 4 and len(seq) % 2 == 0 and is_fan_ordering(m, seq)


def _is_spike_like(m, parts):
    rep = flower_classify(m, parts)
    return rep.is_anemone and len(parts) >= 3 and rep.subkind == "spike-like"


def _partition_ok(m, parts):
    union = 0
    for p in parts:
        if p & union:
            return False
        union |= p
    return union == m.full


def check_even_fan_spike(m, cert):
    v = cert["variant"]
    petals = [tuple(p) for p in cert["petals"]]
    masks = [mask_of(p) for p in petals]
    if v in ("nondegenerate", "degenerate"):
        if not _partition_ok(m, masks):
            return False
        if v == "degenerate":
            if len(petals) != 2 or any(len(p) < 4 for p in petals):
                return False
        elif not _is_spike_like(m, masks):
            return False
        if not all(_even_fan_or_pair(m, p) for p in petals):
            return False
        return all(_efs_pair_ok(m, a, b) for a, b in combinations(petals, 2))
    if v == "tip_cotip":
        x, y = cert["x"], cert["y"]
        if x == y:
            return False
        if not _partition_ok(m, masks):
            return False
        core = [mk & ~((1 << x) | (1 << y)) for mk in masks]
        if cert["degenerate"]:
            # partition (P, Q, {x, y})
            if len(masks) != 3 or masks[2] != (1 << x) | (1 << y):
                return False
            core = masks[:2]
        elif not _is_spike_like(m, masks):
            return False
        for c in core:
            if c == 0:
                return False
            whole = c | (1 << x) | (1 << y)
            seq = _any_ordering(m, whole)
            if seq is None or len(seq) < 4 or len(seq) % 2:
                return False
            if not any({s[0], s[-1]} == {x, y} for s in fan_variants(m, seq)):
                return False
        return True
    return False


def _tip_and_cotip(m, parts, x, y):
    cl = m.full
    cocl = m.full
    for p in parts:
        cl &= m.closure(p)
        cocl &= m.closure(p, dual=True)
    tip = x if (cl >> x) & 1 and not (cl >> y) & 1 else y if (cl >> y) & 1 and not (cl >> x) & 1 else None
    cotip = y if tip == x else x if tip == y else None
    return tip, cotip


def _even_fan_sets(m, min_len=4):
    return [s for s in fan_index(m) if popcount(s) >= min_len and popcount(s) % 2 == 0]


def _efs_tipless(m, budget):
    pieces = [s for s in _even_fan_sets(m) if _triad_start(m, _any_ordering(m, s))]
    seq_of = {s: _any_ordering(m, s) for s in pieces}
    in4 = set()
    for c in circuits4(m):
        for a, b in combinations(elements(c), 2):
            in4.add((1 << a) | (1 << b))
    for pr in in4:
        seq_of[pr] = tuple(elements(pr))
    allp = pieces + sorted(in4)
    for cover, _ in _covers(m.full, allp, lambda a, b: _efs_pair_ok(m, seq_of[a], seq_of[b]), budget):
        if len(cover) < 3:
            continue
        petals = [_triad_start(m, seq_of[p])[0] for p in cover]
        cert = {"variant": "nondegenerate", "petals": petals}
        if check_even_fan_spike(m, cert):
            return cert
    low = 1
    for s in pieces:
        if not s & low:
            continue
        q = m.full & ~s
        if q in seq_of and popcount(q) >= 4:
            cert = {"variant": "degenerate",
                    "petals": [_triad_start(m, seq_of[s])[0], _triad_start(m, seq_of[q])[0]]}
            if check_even_fan_spike(m, cert):
                return cert
    return None


def _efs_tipped(m, budget):
    by_ends = {}
    for s in _even_fan_sets(m):
        for seq in fan_orderings(m, s):
            key = (min(seq[0], seq[-1]), max(seq[0], seq[-1]))
            by_ends.setdefault(key, set()).add(s)
    for (x, y), sets in sorted(by_ends.items()):
        xy = (1 << x) | (1 << y)
        pieces = sorted(s & ~xy for s in sets)
        for cover, _ in _covers(m.full & ~xy, pieces, lambda a, b: True, budget):
            if len(cover) == 2:
                parts = [cover[0], cover[1], xy]
                cert = {"variant": "tip_cotip", "degenerate": True, "x": x, "y": y,
                        "petals": [tuple(elements(p)) for p in parts]}
                if check_even_fan_spike(m, cert):
                    tip, cotip = _tip_and_cotip(m, cover, x, y)
                    cert.update(tip=tip, cotip=cotip)
                    return cert
                continue
            if len(cover) < 3:
                continue
            k = len(cover)
            for a in range(k):
                for b in range(k):
                    parts = list(cover)
                    parts[a] |= 1 << x
                    parts[b] |= 1 << y
                    cert = {"variant": "tip_cotip", "degenerate": False, "x": x, "y": y,
                            "petals": [tuple(elements(p)) for p in parts]}
                    if check_even_fan_spike(m, cert):
                        tip, cotip = _tip_and_cotip(m, parts, x, y)
                        cert.update(tip=tip, cotip=cotip)
                        return cert
    return None


def recognize_even_fan_spike(m, budget=None):
    """Certificate for a tipless even-fan-spike, else for one with tip and cotip."""
    budget = budget or _Budget()
    return _efs_tipless(m, budget) or _efs_tipped(m, budget)


def efs_tag(cert):
    return "even_fan_spike_tip_cotip" if cert["variant"] == "tip_cotip" else "even_fan_spike"


# even-fan-paddles

def _efp_pair_ok(m, si, sj, x):
    for p in _ending_at(m, si, x):
        for q in _ending_at(m, sj, x):
            if m.is_circuit(mask_of(p[:2] + q[:2])):
                return True
    return False


def check_even_fan_paddle(m, cert):
    parts = [int(p) for p in cert["parts"]]
    x = cert["x"]
    k = len(parts)
    if k < 3 or not _partition_ok(m, parts) or not (parts[-1] >> x) & 1:
        return False
    rep = flower_classify(m, parts)
    if not (rep.is_anemone and rep.subkind == "paddle"):
        return False
    seqs = []
    for i, p in enumerate(parts):
        whole = p | (1 << x)
        if popcount(whole) == 2:
            if i != k - 1 or k != 3:
                return False
            seqs.append(tuple(elements(whole)))
            continue
        seq = _any_ordering(m, whole)
        if seq is None or len(seq) < 4 or len(seq) % 2:
            return False
        if not _ending_at(m, seq, x):
            return False
        seqs.append(seq)
    return all(_efp_pair_ok(m, a, b, x) for a, b in combinations(seqs, 2))


def recognize_even_fan_paddle(m, budget=None):
    budget = budget or _Budget()
    sets = _even_fan_sets(m)
    for x in range(m.n):
        xb = 1 << x
        seq_of = {}
        for s in sets:
            if s & xb:
                seq = _any_ordering(m, s)
                if _ending_at(m, seq, x):
                    seq_of[s & ~xb] = seq
        if len(seq_of) < 2:
            continue
        compat = lambda a, b: _efp_pair_ok(m, seq_of[a], seq_of[b], x)
        for cover, left in _covers(m.full & ~xb, sorted(seq_of), compat, budget, leftover_max=1):
            if left:
                if len(cover) != 2:
                    continue
                options = [cover + [left | xb]]
            else:
                if len(cover) < 3:
                    continue
                options = [[p for p in cover if p != last] + [last | xb] for last in cover]
            for parts in options:
                cert = {"parts": parts, "x": x}
                if check_even_fan_paddle(m, cert):
                    return cert
    return None


# triad-paddles and relatives

def _pi(m, a, b, dual=False):
    return m.local_conn(a, b, dual=dual)


def _triad_cover(m, universe, budget, leftover_max=0, dual=False):
    pieces = [t for t in (triangles(m) if dual else triads(m)) if not t & ~universe]
    ranks = m.dual_ranks if dual else m.ranks
    compat = lambda a, b: is_mk23_restriction(m, a | b, ranks)
    return _covers(universe, sorted(pieces), compat, budget, leftover_max)


def recognize_triad_paddle(m, budget=None):
    budget = budget or _Budget()
    if m.n % 3:
        return None
    for cover, _ in _triad_cover(m, m.full, budget):
        if len(cover) < 2:
            continue
        labelled = _label_triads(m.ranks, cover)
        if labelled and check_triad_paddle(m, labelled):
            return {"triads": labelled}
    return None


def _is_4fan(m, four):
    return any(is_fan_ordering(m, p) for p in permutations(elements(four)))


def _affixed_4fan(m, four, tstar):
    for seq in permutations(elements(four)):
        x0, x1, x2, xl = seq
        if not (is_fan_ordering(m, seq) and is_triad(m, mask_of(seq[:3]))):
            continue
        if not (m.closure(tstar) >> xl) & 1:
            continue
        if all(_four_circuit_via(m, x0, xi, tstar) for xi in (x1, x2)):
            return True
    return False


def _four_circuit_via(m, a, b, tstar):
    """Some 4-element circuit C with {a, b} in C inside {a, b} + tstar."""
    base = (1 << a) | (1 << b)
    return any(m.is_circuit(base | (1 << s) | (1 << t)) for s, t in combinations(elements(tstar), 2))


def check_hinged_triad_paddle(m, cert):
    parts = [int(p) for p in cert["parts"]]
    x = cert["x"]
    xb = 1 << x
    k = len(parts)
    if k < 3 or not _partition_ok(m, parts + [xb]):
        return False
    pm = parts[-1]
    rep = flower_classify(m, parts[:-1] + [pm | xb])
    if not (rep.is_anemone and rep.subkind == "paddle"):
        return False
    if not all(is_triad(m, p) for p in parts):
        return False
    if not (m.closure(pm) >> x) & 1 or _is_4fan(m, pm | xb):
        return False
    for p in parts[:-1]:
        if not (_affixed_4fan(m, p | xb, pm) or is_mk23_restriction(m, p | pm)):
            return False
    return True


def recognize_hinged_triad_paddle(m, budget=None):
    budget = budget or _Budget()
    if (m.n - 1) % 3:
        return None
    for x in range(m.n):
        xb = 1 << x
        pieces = sorted(t for t in triads(m) if not t & xb)
        compat = lambda a, b: _pi(m, a, b) == 2
        for cover, _ in _covers(m.full & ~xb, pieces, compat, budget):
            if len(cover) < 3:
                continue
            for pm in cover:
                if not (m.closure(pm) >> x) & 1:
                    continue
                cert = {"parts": [p for p in cover if p != pm] + [pm], "x": x}
                if check_hinged_triad_paddle(m, cert):
                    return cert
    return None


def augmented_affixed(m, petal, tstar):
    if popcount(petal) != 6:
        return False
    for x in elements(petal):
        rest = petal & ~(1 << x)
        for seq in permutations(elements(rest)):
            e1, e2, e3, e4, e5 = seq
            if not is_triad(m, mask_of(seq[:3])) or not is_fan_ordering(m, seq):
                continue
            if not m.is_circuit(mask_of((e1, e3, e5, x))):
                continue
            four = tstar | (1 << x)
            for t1 in elements(tstar):
                if not any({s[0], s[-1]} == {x, t1} for s in permutations(elements(four))
                           if is_fan_ordering(m, s)):
                    continue
                t2, t3 = [t for t in elements(tstar) if t != t1]
                for a, b in ((t2, t3), (t3, t2)):
                    if m.is_circuit(mask_of((t1, a, e1, e2))) and m.is_circuit(mask_of((t1, b, e4, e5))):
                        return True
    return False


def co_augmented_affixed(m, petal, tstar):
    if popcount(petal) != 6:
        return False
    for x in elements(petal):
        rest = petal & ~(1 << x)
        for seq in permutations(elements(rest)):
            e1, e2, e3, e4, e5 = seq
            if not is_triangle(m, mask_of(seq[:3])) or not is_fan_ordering(m, seq):
                continue
            if not m.is_cocircuit(mask_of((e1, e3, e5, x))):
                continue
            for t1 in elements(tstar):
                t2, t3 = [t for t in elements(tstar) if t != t1]
                for a, b in ((t2, t3), (t3, t2)):
                    if m.is_circuit(mask_of((t1, a, e1, x))) and m.is_circuit(mask_of((t1, b, e5, x))):
                        return True
    return False


def _two_partners(m, x, others, tstar):
    return sum(1 for y in others if _four_circuit_via(m, x, y, tstar)) >= 2


def quad_affixed(m, petal, tstar):
    if popcount(petal) != 4 or not (m.is_circuit(petal) and m.is_cocircuit(petal)):
        return False
    el = elements(petal)
    return all(_two_partners(m, x, [y for y in el if y != x], tstar) for x in el)


def near_quad_affixed(m, petal, tstar):
    if popcount(petal) != 4 or not m.is_cocircuit(petal):
        return False
    for x in elements(petal):
        if is_triangle(m, petal & ~(1 << x)):
            if _two_partners(m, x, elements(petal & ~(1 << x)), tstar):
                return True
    return False


_AFFIXED = {"augmented": augmented_affixed, "co_augmented": co_augmented_affixed,
            "quad": quad_affixed, "near_quad": near_quad_affixed}


def _quasi_base_ok(m, labelled, petal):
    """(P_1, ..., P_k, petal) is a paddle and M \\ petal is a triad-paddle on the P_i."""
    parts = [mask_of(t) for t in labelled] + [petal]
    if len(parts) < 3 or not _partition_ok(m, parts):
        return False
    rep = flower_classify(m, parts)
    if not (rep.is_anemone and rep.subkind == "paddle"):
        return False
    return check_triad_paddle(m, labelled, ground=m.full & ~petal)


def check_quasi_triad_paddle(m, cert):
    labelled = [tuple(t) for t in cert["triads"]]
    petal = int(cert["petal"])
    if not _quasi_base_ok(m, labelled, petal):
        return False
    kinds = [k for k in PETAL_KINDS
             if all(_AFFIXED[k](m, petal, mask_of(t)) for t in labelled)]
    return kinds == list(cert["kinds"]) and bool(kinds)


def recognize_quasi_triad_paddle(m, budget=None):
    budget = budget or _Budget()
    for cover, left in _triad_cover(m, m.full, budget, leftover_max=6):
        if popcount(left) not in (4, 6) or len(cover) < 2:
            continue
        labelled = _label_triads(m.ranks, cover)
        if not labelled or not _quasi_base_ok(m, labelled, left):
            continue
        kinds = [k for k in PETAL_KINDS
                 if all(_AFFIXED[k](m, left, mask_of(t)) for t in labelled)]
        if kinds:
            return {"triads": labelled, "petal": left, "kinds": kinds}
    return None


def check_tri_paddle_copaddle(m, cert):
    ps = [tuple(t) for t in cert["triads"]]
    qs = [tuple(t) for t in cert["triangles"]]
    if len(ps) < 2 or len(qs) < 2:
        return False
    pu = mask_of([e for t in ps for e in t])
    qu = mask_of([e for t in qs for e in t])
    if not all(is_triad(m, mask_of(t)) for t in ps) or not all(is_triangle(m, mask_of(t)) for t in qs):
        return False
    if not _quasi_base_ok(m, ps, qu):
        return False
    md = m.dual()
    return _quasi_base_ok(md, qs, pu)


def recognize_tri_paddle_copaddle(m, budget=None):
    budget = budget or _Budget()
    tads, tris = triads(m), triangles(m)
    pieces = sorted(tads | tris)

    def compat(a, b):
        if a in tads and b in tads:
            return is_mk23_restriction(m, a | b)
        if a in tris and b in tris:
            return is_mk23_restriction(m, a | b, m.dual_ranks)
        return True

    for cover, _ in _covers(m.full, pieces, compat, budget):
        ps = [p for p in cover if p in tads]
        qs = [p for p in cover if p in tris]
        if len(ps) < 2 or len(qs) < 2:
            continue
        lp = _label_triads(m.ranks, ps)
        lq = _label_triads(m.dual_ranks, qs)
        if not lp or not lq:
            continue
        cert = {"s": len(ps), "t": len(qs), "triads": lp, "triangles": lq}
        if check_tri_paddle_copaddle(m, cert):
            return cert
    return None


# accordions

def _left_ends(m, fan):
    """Candidate left-hand ends (kind, mask, order) of a fan starting with a triangle."""
    e1, e2 = fan[0], fan[1]
    fmask = mask_of(fan)
    out = []
    for s in maximal_fan_masks(m):
        if popcount(s) != 5 or not (s >> e1) & 1 or s & fmask & ~(1 << e1):
            continue
        for seq in fan_orderings(m, s):
            if seq[0] == e1:
                out.append(("fan", s & ~(1 << e1), seq))
    tris = [t for t in triangles(m) if (t >> e1) & 1 and not t & fmask & ~(1 << e1)
            and _no_4fan(m, t)]
    for t in tris:
        out.append(("triangle", t & ~(1 << e1), tuple(elements(t & ~(1 << e1)))))
    for a, b in combinations(tris, 2):
        if a & b == 1 << e1:
            a1, a2 = elements(a & ~(1 << e1))
            b1, b2 = elements(b & ~(1 << e1))
            for order in ((a1, a2, b1, b2), (a1, a2, b2, b1)):
                out.append(("quad", (a | b) & ~(1 << e1), order))
    return out


def _check_left_end(m, fan, kind, g, order, dual=False):
    """Left-hand end conditions; with dual=True the right-hand ones read in M*."""
    tri = (lambda s: is_triad(m, s)) if dual else (lambda s: is_triangle(m, s))
    tad = (lambda s: is_triangle(m, s)) if dual else (lambda s: is_triad(m, s))
    cocirc = (lambda s: m.is_circuit(s)) if dual else (lambda s: m.is_cocircuit(s))
    circ = (lambda s: m.is_cocircuit(s)) if dual else (lambda s: m.is_circuit(s))
    e1, e2 = fan[0], fan[1]
    if kind == "fan":
        seq = tuple(order)
        if len(seq) != 5 or seq[0] != e1 or mask_of(seq[1:]) != g or not is_fan_ordering(m, seq):
            return False
        if mask_of(seq) not in maximal_fan_masks(m):
            return False
        _, g2, g3, g4, g5 = seq
        return tri(mask_of(seq[:3])) and cocirc(mask_of((e1, e2, g3, g5)))
    if kind in ("triangle", "triad"):
        t = g | (1 << e1)
        return popcount(g) == 2 and tri(t) and _no_4fan(m, t, dual) and cocirc(g | (1 << e1) | (1 << e2))
    if kind == "quad":
        a1, a2, b1, b2 = order
        if mask_of(order) != g or popcount(g) != 4 or not (circ(g) and cocirc(g)):
            return False
        for pair in ((a1, a2), (b1, b2)):
            t = mask_of(pair + (e1,))
            if not (tri(t) and _no_4fan(m, t, dual)):
                return False
        return all(cocirc(mask_of(c + (e1, e2))) for c in ((a1, b1), (a2, b2)))
    return False


def _lemma_values(m, kind, g, order, h, dual=False):
    pi = lambda a, b: m.local_conn(a, b, dual=dual)
    copi = lambda a, b: m.local_conn(a, b, dual=not dual)
    if kind == "fan":
        _, g2, g3, g4, g5 = order
        return pi(mask_of((g2, g4)), h) == 1 and copi(mask_of((g4, g5)), h) == 1
    if kind in ("triangle", "triad"):
        return pi(g, h) == 1 and copi(g, h) == 1
    a1, a2, b1, b2 = order
    return (pi(mask_of((a1, b1)), h) == 1 and pi(mask_of((a2, b2)), h) == 1
            and copi(mask_of((a1, a2)), h) == 1 and copi(mask_of((b1, b2)), h) == 1)


def accordion_lemmas_hold(m, cert):
    """Local-connectivity values of the two ends against each other."""
    return (_lemma_values(m, cert.g_kind, cert.g, cert.g_order, cert.h)
            and _lemma_values(m, cert.h_kind, cert.h, cert.h_order, cert.g, dual=True))


def check_accordion(m, cert):
    fan = tuple(cert.fan)
    if len(fan) < 4 or len(fan) % 2 or not is_fan_ordering(m, fan):
        return False
    if not is_triangle(m, mask_of(fan[:3])) or mask_of(fan) not in maximal_fan_masks(m):
        return False
    if not _partition_ok(m, [cert.g, mask_of(fan), cert.h]):
        return False
    if cert.g_kind not in ("fan", "quad", "triangle") or cert.h_kind not in ("fan", "quad", "triad"):
        return False
    if not _check_left_end(m, fan, cert.g_kind, cert.g, cert.g_order):
        return False
    return _check_left_end(m, fan[::-1], cert.h_kind, cert.h, cert.h_order, dual=True)


def _right_ends(m, fan):
    # right-hand ends of fan are left-hand ends of the reversed fan in M*
    md = m.dual()
    return _left_ends(md, fan[::-1])


def recognize_accordion(m, budget=None):
    budget = budget or _Budget()
    for s in maximal_fan_masks(m):
        if popcount(s) < 4 or popcount(s) % 2:
            continue
        for fan in fan_orderings(m, s):
            if not is_triangle(m, mask_of(fan[:3])):
                continue
            rest = m.full & ~s
            for gk, g, go in _left_ends(m, fan):
                budget.tick()
                if g & ~rest:
                    continue
                for hk, h, ho in _right_ends(m, fan):
                    budget.tick()
                    if h & ~rest or g & h or g | h != rest:
                        continue
                    hk = "triad" if hk == "triangle" else hk
                    cert = AccordionCert(g, gk, tuple(go), tuple(fan), h, hk, tuple(ho))
                    if not check_accordion(m, cert):
                        continue
                    if not (_lemma_values(m, gk, g, go, h) and _lemma_values(m, hk, h, ho, g, dual=True)):
                        raise LemmaViolation(f"accordion end lemma values fail for {cert}")
                    return cert
    return None


# classification

ITEM_OF = {
    "detachable_pair": 1, "wheel": 2, "whirl": 2, "accordion": 3,
    "even_fan_spike": 4, "even_fan_spike_tip_cotip": 4,
    "even_fan_paddle": 5, "even_fan_paddle_dual": 5,
    "triad_paddle": 6, "triad_paddle_dual": 6, "hinged_triad_paddle": 6,
    "hinged_triad_paddle_dual": 6, "tri_paddle_copaddle": 7,
}


def item_of(tag):
    if tag.startswith("quasi_triad_paddle"):
        return 8
    return ITEM_OF.get(tag)


def _on_dual(fn):
    def run(m, budget=None):
        return fn(m.dual(), budget)
    return run


def _wheel_tag(m, budget=None):
    return recognize_wheel_whirl(m)


def _family_runs():
    """(tag-maker, recognizer) in the fixed search order."""
    return [
        (lambda c: c["kind"], _wheel_tag),
        (lambda c: "triad_paddle", recognize_triad_paddle),
        (lambda c: "triad_paddle_dual", _on_dual(recognize_triad_paddle)),
        (lambda c: "hinged_triad_paddle", recognize_hinged_triad_paddle),
        (lambda c: "hinged_triad_paddle_dual", _on_dual(recognize_hinged_triad_paddle)),
        (lambda c: "tri_paddle_copaddle", recognize_tri_paddle_copaddle),
        (lambda c: f"quasi_triad_paddle({c['kinds'][0]})", recognize_quasi_triad_paddle),
        (lambda c: f"quasi_triad_paddle_dual({c['kinds'][0]})", _on_dual(recognize_quasi_triad_paddle)),
        (lambda c: "even_fan_spike", _efs_tipless),
        (lambda c: "even_fan_spike_tip_cotip", _efs_tipped),
        (lambda c: "even_fan_paddle", recognize_even_fan_paddle),
        (lambda c: "even_fan_paddle_dual", _on_dual(recognize_even_fan_paddle)),
        (lambda c: "accordion", recognize_accordion),
    ]


def classify_matroid(m, exhaustive=False, check_pairs=True, min_size=MIN_CLASSIFY_SIZE):
    """One outcome of the classification, with all matched families when exhaustive."""
    if m.n < min_size:
        raise PreconditionError(f"classification needs at least {min_size} elements")
    if not is_3connected(m):
        raise PreconditionError("classification needs a 3-connected matroid")
    matches = []
    if check_pairs:
        pairs = find_detachable_pairs(m, "first")
        if pairs:
            matches.append(("detachable_pair", pairs[0]))
            if not exhaustive:
                return Classification("detachable_pair", pairs[0], matches, (1,))
    for tag_of, fn in _family_runs():
        cert = fn(m, _Budget())
        if cert is None:
            continue
        matches.append((tag_of(cert), cert))
        if not exhaustive:
            break
    if not matches:
        return Classification("unclassified", None, [], ())
    items = tuple(sorted({item_of(t) for t, _ in matches}))
    return Classification(matches[0][0], matches[0][1], matches, items, _subsumed(matches, item_of))


def _degenerate_spike(cert):
    return isinstance(cert, dict) and "variant" in cert and (
        cert["variant"] == "degenerate" or bool(cert.get("degenerate")))


def _degenerate_paddle(cert):
    # three parts, the one holding x of size two
    return (isinstance(cert, dict) and "parts" in cert and len(cert["parts"]) == 3
            and popcount(int(cert["parts"][-1])) == 2)


def _subsumed(matches, item):
    """Items matched only through a known overlap of the family definitions.

    Two overlaps are recognised. Every wheel or whirl also satisfies the
    degenerate even-fan-spike with tip and cotip definition: two arcs of the
    cyclic fan between elements an odd distance apart are even fans with
    those ends. And a matroid can carry both a degenerate even-fan-spike and
    a degenerate even-fan-paddle (for graphs, a twisted wheel with k = 1 is
    also a degenerate multi-wheel and a stretched wheel). Any other overlap
    counts against exclusivity.
    """
    tags = {t for t, _ in matches}
    out = set()
    if tags & {"wheel", "whirl"}:
        tipped = "twisted_wheel" if "twisted_wheel" in tags else "even_fan_spike_tip_cotip"
        certs = [c for t, c in matches if t == tipped]
        # other tags under the same item are not implied by the containment
        if certs and all(_degenerate_spike(c) for c in certs) and not (
                {t for t in tags if item(t) == item(tipped)} - {tipped}):
            out.add(item(tipped))
    spikes = [(t, c) for t, c in matches if t in _SPIKE_TAGS]
    paddles = [(t, c) for t, c in matches if t in _PADDLE_TAGS]
    if spikes and paddles and all(_degenerate_spike(c) for _, c in spikes) and all(
            _degenerate_paddle(c) for _, c in paddles):
        out |= {item(t) for t, _ in paddles} - {item(t) for t, _ in spikes}
    return tuple(sorted(out))


_SPIKE_TAGS = frozenset({"even_fan_spike", "even_fan_spike_tip_cotip", "twisted_wheel", "warped_wheel"})
_PADDLE_TAGS = frozenset({"even_fan_paddle", "even_fan_paddle_dual", "multi_wheel", "stretched_wheel"})


def recognize_tag(m, tag):
    """Certificate that m carries the outcome tag, or None."""
    base = tag.split("(")[0]
    dual = base.endswith("_dual")
    host = m.dual() if dual else m
    base = base[: -len("_dual")] if dual else base
    if base in ("wheel", "whirl"):
        c = recognize_wheel_whirl(host)
        return c if c and c["kind"] == base else None
    if base == "accordion":
        return recognize_accordion(host)
    if base in ("even_fan_spike", "even_fan_spike_tip_cotip"):
        b = _Budget()
        c = _efs_tipless(host, b) if base == "even_fan_spike" else _efs_tipped(host, b)
        return c
    if base == "even_fan_paddle":
        return recognize_even_fan_paddle(host)
    if base == "triad_paddle":
        return recognize_triad_paddle(host)
    if base == "hinged_triad_paddle":
        return recognize_hinged_triad_paddle(host)
    if base == "tri_paddle_copaddle":
        return recognize_tri_paddle_copaddle(host)
    if base == "quasi_triad_paddle":
        kind = tag.split("(")[1].rstrip(")") if "(" in tag else None
        c = recognize_quasi_triad_paddle(host)
        return c if c and (kind is None or kind in c["kinds"]) else None
    raise ArgumentError(f"unknown outcome tag {tag!r}")


def replay(m, tag, cert):
    """Re-validate a certificate with rank lookups only."""
    base = tag.split("(")[0]
    dual = base.endswith("_dual")
    host = m.dual() if dual else m
    base = base[: -len("_dual")] if dual else base
    if base in ("wheel", "whirl"):
        return check_wheel_whirl(host, cert) and cert["kind"] == base
    if base == "accordion":
        return check_accordion(host, cert)
    if base.startswith("even_fan_spike"):
        return check_even_fan_spike(host, cert) and efs_tag(cert) == base
    if base == "even_fan_paddle":
        return check_even_fan_paddle(host, cert)
    if base == "triad_paddle":
        return check_triad_paddle(host, cert["triads"])
    if base == "hinged_triad_paddle":
        return check_hinged_triad_paddle(host, cert)
    if base == "tri_paddle_copaddle":
        return check_tri_paddle_copaddle(host, cert)
    if base == "quasi_triad_paddle":
        return check_quasi_triad_paddle(host, cert)
    if base == "detachable_pair":
        from .detach import pair_status
        return pair_status(m, cert.e, cert.f).detachable
    raise ArgumentError(f"unknown outcome tag {tag!r}")


GRAPH_LABELS = {
    "wheel": ("wheel",), "accordion": ("mutant_wheel",), "even_fan_paddle": ("multi_wheel",),
    "even_fan_paddle_dual": ("stretched_wheel",), "triad_paddle": ("k3m",),
    "quasi_triad_paddle(co_augmented)": ("k3m_prime",),
    "quasi_triad_paddle(augmented)": ("k3m_doubleprime",),
    "even_fan_spike_tip_cotip": ("twisted_wheel", "warped_wheel"),
    "even_fan_spike": ("warped_wheel", "twisted_wheel"),
}


def graph_outcome(tag, g):
    """Graph family named by a matroid outcome, confirmed on g by isomorphism."""
    for family in GRAPH_LABELS.get(tag, ()):
        if is_family_graph(g, family):
            return family
    return "unclassified"


def classify_graph(g, exhaustive=False, min_size=MIN_CLASSIFY_SIZE):
    if g.edge_count < min_size:
        raise PreconditionError(f"classification needs at least {min_size} edges")
    if not is_simple_3connected(g):
        raise PreconditionError("classification needs a simple 3-connected graph")
    pairs = find_graph_detachable_pairs(g, "first")
    m = from_graph(g, allow_large=True)
    if pairs and not exhaustive:
        return Classification("detachable_pair", pairs[0], [("detachable_pair", pairs[0])], (1,))
    mc = classify_matroid(m, exhaustive=exhaustive, check_pairs=False, min_size=min_size)
    matches = [("detachable_pair", pairs[0])] if pairs else []
    for tag, cert in mc.matches:
        matches.append((graph_outcome(tag, g), cert))
    if not matches:
        return Classification("unclassified", None, [], ())
    items = tuple(sorted({GRAPH_ITEM.get(t, 0) for t, _ in matches}))
    return Classification(matches[0][0], matches[0][1], matches, items,
                          _subsumed(matches, GRAPH_ITEM.get))


GRAPH_ITEM = {
    "detachable_pair": 1, "wheel": 2, "mutant_wheel": 3, "twisted_wheel": 4,
    "warped_wheel": 4, "multi_wheel": 5, "stretched_wheel": 6, "k3m": 7,
    "k3m_prime": 8, "k3m_doubleprime": 8, "unclassified": 0,
}
