"""Small circuits and cocircuits, fans, M(K4)-separators and flowers."""
from dataclasses import dataclass
from itertools import combinations, permutations

import numpy as np

from .bits import elements, mask_of, popcount, popcounts
from .errors import ArgumentError, SearchCapExceeded

FAN_ORDERING_CAP = 10 ** 6


@dataclass(frozen=True)
class SmallSet:
    mask: int
    kind: str  # circuit | cocircuit
    size: int


@dataclass(frozen=True)
class Fan:
    ordering: tuple
    start_kind: str  # triangle | triad
    maximal: bool = True
    wheel: bool = False

    def __len__(self):
        return len(self.ordering)

    @property
    def mask(self):
        return mask_of(self.ordering)


@dataclass(frozen=True)
class FlowerReport:
    parts: tuple
    is_flower: bool
    is_anemone: bool
    subkind: str  # paddle | spike-like | copaddle | mixed | none
    pairwise_pi: tuple


def _circuit_masks(ranks, n, kmax):
    pc = popcounts(n)
    cand = np.flatnonzero((pc <= kmax) & (ranks < pc))
    if cand.size == 0:
        return cand
    keep = np.ones(cand.size, dtype=bool)
    dep = ranks < pc
    for i in range(n):
        has = (cand >> i) & 1 == 1
        keep[has] &= ~dep[cand[has] ^ (1 << i)]
    return cand[keep]


def small_dependents(m, kind="circuit", kmax=4):
    if kind not in ("circuit", "cocircuit"):
        raise ArgumentError(f"unknown kind {kind!r}")
    key = ("small", kind, kmax)
    if key not in m.memo:
        ranks = m.ranks if kind == "circuit" else m.dual_ranks
        masks = _circuit_masks(ranks, m.n, kmax)
        m.memo[key] = [SmallSet(int(x), kind, popcount(int(x))) for x in masks]
    return m.memo[key]


def _sized(m, kind, size):
    key = ("sized", kind, size)
    if key not in m.memo:
        m.memo[key] = frozenset(s.mask for s in small_dependents(m, kind, max(size, 4)) if s.size == size)
    return m.memo[key]


def triangles(m):
    return _sized(m, "circuit", 3)


def triads(m):
    return _sized(m, "cocircuit", 3)


def quads(m):
    key = ("quads",)
    if key not in m.memo:
        m.memo[key] = _sized(m, "circuit", 4) & _sized(m, "cocircuit", 4)
    return m.memo[key]


def circuits4(m):
    return _sized(m, "circuit", 4)


def cocircuits4(m):
    return _sized(m, "cocircuit", 4)


def _thirds(sets):
    """(a, b) -> elements c with {a, b, c} in sets."""
    out = {}
    for s in sets:
        a, b, c = elements(s)
        for x, y, z in ((a, b, c), (a, c, b), (b, c, a)):
            out.setdefault((x, y), []).append(z)
            out.setdefault((y, x), []).append(z)
    return out


def fan_index(m):
    """Every fan ordering of length >= 3, grouped by the fan's mask.

    Each ordering is generated once: from its first three elements it
    extends forward, one alternating triple at a time.
    """
    if "fan_index" in m.memo:
        return m.memo["fan_index"]
    tri, tad = triangles(m), triads(m)
    nxt = {"triangle": _thirds(tri), "triad": _thirds(tad)}
    other = {"triangle": "triad", "triad": "triangle"}
    index = {}
    count = 0

    def kinds(s):
        return (s in tri, s in tad)

    def grow(seq, used, is_tri, is_tad):
        nonlocal count
        index.setdefault(used, []).append(tuple(seq))
        count += 1
        if count > FAN_ORDERING_CAP:
            raise SearchCapExceeded("too many fan orderings", count)
        a, b = seq[-2], seq[-1]
        # both implications of the alternation apply when a triple is both
        need = []
        if is_tri:
            need.append("triad")
        if is_tad:
            need.append("triangle")
        cands = None
        for k in need:
            c = set(nxt[k].get((a, b), ()))
            cands = c if cands is None else cands & c
        for c in sorted(cands or ()):
            if (used >> c) & 1:
                continue
            s = (1 << a) | (1 << b) | (1 << c)
            t1, t2 = kinds(s)
            seq.append(c)
            grow(seq, used | (1 << c), t1, t2)
            seq.pop()

    for s in sorted(tri | tad):
        t1, t2 = kinds(s)
        for p in permutations(elements(s)):
            grow(list(p), s, t1, t2)
    m.memo["fan_index"] = index
    return index


def fan_orderings(m, mask):
    """All fan orderings of the set mask (empty if it is not a fan of length >= 3)."""
    return fan_index(m).get(mask, [])


def is_fan_ordering(m, seq):
    """Direct check of the alternation rule with rank lookups."""
    if len(seq) < 3 or len(set(seq)) != len(seq):
        return len(seq) == 2 and seq[0] != seq[1]
    trip = [mask_of(seq[i:i + 3]) for i in range(len(seq) - 2)]
    t0 = trip[0]
    if not (is_triangle(m, t0) or is_triad(m, t0)):
        return False
    for a, b in zip(trip, trip[1:]):
        if is_triangle(m, a) and not is_triad(m, b):
            return False
        if is_triad(m, a) and not is_triangle(m, b):
            return False
    return True


def is_triangle(m, s):
    return popcount(s) == 3 and m.is_circuit(s)


def is_triad(m, s):
    return popcount(s) == 3 and m.is_cocircuit(s)


def start_kind(m, seq):
    return "triangle" if is_triangle(m, mask_of(seq[:3])) else "triad"


def fan_sets(m):
    return sorted(fan_index(m), key=lambda s: (popcount(s), s))


def maximal_fan_masks(m):
    if "maximal_fan_masks" not in m.memo:
        sets = fan_sets(m)
        out = []
        for i, s in enumerate(sets):
            if not any(t != s and (s & t) == s for t in sets[i + 1:]):
                out.append(s)
        m.memo["maximal_fan_masks"] = out
    return m.memo["maximal_fan_masks"]


def is_wheel_like(m):
    """Every element lies in both a triangle and a triad."""
    inside_tri = 0
    for s in triangles(m):
        inside_tri |= s
    inside_tad = 0
    for s in triads(m):
        inside_tad |= s
    return m.n >= 4 and inside_tri == m.full and inside_tad == m.full


def cyclic_fan_ordering(m):
    """A cyclic ordering of E whose consecutive triples alternate, if any."""
    n = m.n
    if n < 4 or n % 2:
        return None
    best = None
    for seq in fan_orderings(m, m.full):
        ok = True
        for i in (n - 2, n - 1):
            a = mask_of((seq[i], seq[(i + 1) % n], seq[(i + 2) % n]))
            prev = mask_of((seq[i - 1], seq[i], seq[(i + 1) % n]))
            if is_triangle(m, prev) and not is_triad(m, a):
                ok = False
            if is_triad(m, prev) and not is_triangle(m, a):
                ok = False
        if ok and (best is None or seq < best):
            best = seq
    return best


def maximal_fans(m, include_pairs=False):
    """Maximal fans of length >= 3 under their canonical orderings.

    The canonical ordering is the lexicographically least fan ordering. A
    wheel-like matroid whose ground set is a cyclic fan is reported as a
    single Fan with wheel=True. Two-element fans are never claimed maximal;
    include_pairs adds them with maximal=False.
    """
    out = []
    if is_wheel_like(m):
        cyc = cyclic_fan_ordering(m)
        if cyc is not None:
            out.append(Fan(tuple(cyc), start_kind(m, cyc), True, True))
    if not out:
        for s in maximal_fan_masks(m):
            seq = min(fan_orderings(m, s))
            out.append(Fan(seq, start_kind(m, seq), True))
        out.sort(key=lambda f: (-len(f), f.ordering))
    if include_pairs:
        for a, b in combinations(range(m.n), 2):
            out.append(Fan((a, b), "pair", False))
    return out


def fan_ends(f):
    """Ends of a fan and whether they are unique.

    Length >= 4: the two ends of the ordering, unique. Length 3: every
    element is an end of some ordering. Length 2: both elements.
    """
    seq = f.ordering if isinstance(f, Fan) else tuple(f)
    if len(seq) >= 4:
        return (seq[0], seq[-1]), True
    return tuple(sorted(seq)), False


def is_mk4_separator(m, x):
    if popcount(x) != 6:
        raise ArgumentError("an M(K4)-separator has six elements")
    el = elements(x)
    for xyz in combinations(el, 3):
        if not is_triad(m, mask_of(xyz)):
            continue
        abc = [e for e in el if e not in xyz]
        if not is_triangle(m, mask_of(abc)):
            continue
        xx, yy, zz = xyz
        for a, b, c in permutations(abc):
            if (is_triangle(m, mask_of((a, xx, yy))) and is_triangle(m, mask_of((b, xx, zz)))
                    and is_triangle(m, mask_of((c, yy, zz)))):
                return True
    return False


ANEMONE_PART_CAP = 12


def flower_classify(m, parts):
    parts = tuple(int(p) for p in parts)
    union = 0
    for p in parts:
        if p & union or p == 0:
            raise ArgumentError("parts are not a partition")
        union |= p
    if union != m.full:
        raise ArgumentError("parts do not cover the ground set")
    k = len(parts)
    pi = tuple(tuple(m.local_conn(parts[i], parts[j]) if i != j else 0 for j in range(k)) for i in range(k))
    lam = m.lam_table
    is_flower = k >= 2 and all(popcount(p) >= 2 and lam[p] <= 2 for p in parts)
    if is_flower:
        is_flower = all(lam[parts[i] | parts[(i + 1) % k]] <= 2 for i in range(k))
    is_anemone = False
    if is_flower:
        if k > ANEMONE_PART_CAP:
            raise ArgumentError(f"anemone check is capped at {ANEMONE_PART_CAP} parts")
        unions = np.zeros(1 << k, dtype=np.int64)
        for i, p in enumerate(parts):
            unions[1 << i: 2 << i] = unions[: 1 << i] | p
        is_anemone = bool((lam[unions] <= 2).all())
    subkind = "none"
    if is_anemone and k >= 3:
        vals = {pi[i][j] for i in range(k) for j in range(k) if i != j}
        subkind = {frozenset({2}): "paddle", frozenset({1}): "spike-like",
                   frozenset({0}): "copaddle"}.get(frozenset(vals), "mixed")
    return FlowerReport(parts, is_flower, is_anemone, subkind, pi)
