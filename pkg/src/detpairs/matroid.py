"""Matroids stored as complete subset-rank tables."""
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations

import numpy as np

from . import _kernels
from .bits import elements, popcount, popcounts
from .errors import (ArgumentError, CapError, DegenerateMatroidError,
                     InvalidBasesError, PreconditionError)
from .gfp import LinearRepGFp

DEFAULT_CAP = 22
HARD_CAP = 24
VALIDATE_BASES_UP_TO = 16


@dataclass(frozen=True)
class Provenance:
    kind: str  # graphic | linear-gfp | bases | minor-of | dual-of | relaxed
    source: object = None  # Graph, LinearRepGFp or BasesList when known
    info: dict = field(default_factory=dict)


@dataclass(frozen=True)
class BasesList:
    r: int
    bases: frozenset

    def __post_init__(self):
        object.__setattr__(self, "bases", frozenset(int(b) for b in self.bases))
        if not self.bases:
            raise ArgumentError("bases list is empty")
        for b in self.bases:
            if popcount(b) != self.r:
                raise ArgumentError(f"basis {elements(b)} does not have size {self.r}")


def check_size(n, allow_large=False):
    if n < 0:
        raise ArgumentError("negative ground set size")
    cap = HARD_CAP if allow_large else DEFAULT_CAP
    if n > cap:
        raise CapError(f"ground set of size {n} exceeds the cap of {cap}")


class Matroid:
    """Immutable matroid on {0..n-1} with its full rank table."""

    def __init__(self, ranks, names=None, provenance=None, allow_large=False):
        ranks = np.ascontiguousarray(ranks, dtype=np.uint8)
        size = ranks.size
        n = size.bit_length() - 1
        if size != 1 << n:
            raise ArgumentError("rank table length is not a power of two")
        check_size(n, allow_large)
        if ranks.flags.writeable:
            ranks.setflags(write=False)
        self.n = n
        self.ranks = ranks
        if names is not None:
            names = tuple(str(s) for s in names)
            if len(names) != n or len(set(names)) != n:
                raise ArgumentError("element names must be distinct, one per element")
        self.names = names
        self.provenance = provenance or Provenance("bases")
        self.memo = {}

    # basic data
    @property
    def full(self):
        return (1 << self.n) - 1

    @property
    def r(self):
        return int(self.ranks[-1])

    def __len__(self):
        return self.n

    def __eq__(self, other):
        return isinstance(other, Matroid) and self.n == other.n and np.array_equal(self.ranks, other.ranks)

    def __hash__(self):
        return hash(self.ranks.tobytes())

    def __repr__(self):
        return f"Matroid(n={self.n}, r={self.r}, {self.provenance.kind})"

    def name(self, e):
        return self.names[e] if self.names else str(e)

    def _check(self, x):
        if not isinstance(x, (int, np.integer)) or x < 0 or x > self.full:
            raise ArgumentError(f"mask {x!r} is outside the ground set")
        return int(x)

    # rank primitives
    def rank(self, x):
        return int(self.ranks[self._check(x)])

    def corank(self, x):
        x = self._check(x)
        return popcount(x) + int(self.ranks[self.full ^ x]) - self.r

    def lam(self, x):
        x = self._check(x)
        return int(self.ranks[x]) + int(self.ranks[self.full ^ x]) - self.r

    def local_conn(self, x, y, dual=False):
        f = self.corank if dual else self.rank
        return f(x) + f(y) - f(x | y)

    def closure(self, x, dual=False):
        x = self._check(x)
        f = self.corank if dual else self.rank
        base = f(x)
        out = x
        for e in range(self.n):
            if not (x >> e) & 1 and f(x | (1 << e)) == base:
                out |= 1 << e
        return out

    def is_independent(self, x):
        return self.rank(x) == popcount(x)

    def is_circuit(self, x, dual=False):
        f = self.corank if dual else self.rank
        k = popcount(x)
        if k == 0 or f(x) != k - 1:
            return False
        return all(f(x ^ (1 << e)) == k - 1 for e in elements(x))

    def is_cocircuit(self, x):
        return self.is_circuit(x, dual=True)

    # whole-table views
    @cached_property
    def lam_table(self):
        r = self.ranks.astype(np.int16)
        t = r + r[::-1] - r[-1]
        t.setflags(write=False)
        return t

    @cached_property
    def dual_ranks(self):
        r = self.ranks.astype(np.int16)
        t = (popcounts(self.n) + r[::-1] - r[-1]).astype(np.uint8)
        t.setflags(write=False)
        return t

    def dual(self):
        # memoized both ways so search caches on M* survive repeated calls
        if "dual" not in self.memo:
            d = Matroid(self.dual_ranks, self.names, Provenance("dual-of", self), allow_large=True)
            d.memo["dual"] = self
            self.memo["dual"] = d
        return self.memo["dual"]

    def delete(self, s):
        return minor(self, "delete", s)

    def contract(self, s):
        return minor(self, "contract", s)

    def bases(self):
        pc = popcounts(self.n)
        return np.flatnonzero((pc == self.r) & (self.ranks == self.r))


# construction
def from_graph(g, allow_large=False):
    if g.edge_count < 1:
        raise ArgumentError("graph has no edges")
    check_size(g.edge_count, allow_large)
    ends = np.array(g.edges, dtype=np.int64).reshape(-1, 2)
    ranks = _kernels.graphic_rank_table(ends, max(g.vertex_count, 1))
    return Matroid(ranks, g.labels, Provenance("graphic", g), allow_large)


def from_gfp_matrix(rep, names=None, allow_large=False):
    if not isinstance(rep, LinearRepGFp):
        raise ArgumentError("expected a LinearRepGFp")
    n = rep.ncols
    if n < 1:
        raise ArgumentError("matrix has no columns")
    check_size(n, allow_large)
    rows = max(len(rep.rows), 1)
    cols = np.zeros((n, rows), dtype=np.int64)
    for i, row in enumerate(rep.rows):
        cols[:, i] = row
    ranks = _kernels.gfp_rank_table(cols, rep.prime)
    return Matroid(ranks, names, Provenance("linear-gfp", rep), allow_large)


def _submodular_violation(ranks, n):
    """First (X, a, b) with r(X+a) + r(X+b) < r(X+a+b) + r(X), else None."""
    r = ranks.astype(np.int16)
    for a, b in combinations(range(n), 2):
        t = r.reshape((2,) * n) if n else r
        ia, ib = n - 1 - a, n - 1 - b
        def sl(va, vb):
            idx = [slice(None)] * n
            idx[ia] = va
            idx[ib] = vb
            return t[tuple(idx)]
        bad = sl(1, 0) + sl(0, 1) < sl(1, 1) + sl(0, 0)
        if bad.any():
            pos = np.unravel_index(int(np.argmax(bad)), bad.shape)
            axes = [k for k in range(n) if k not in (ia, ib)]
            x = 0
            for ax, v in zip(axes, pos):
                if v:
                    x |= 1 << (n - 1 - ax)
            return x, a, b
    return None


def _exchange_witness(bases):
    bl = sorted(bases)
    bs = set(bl)
    for b1 in bl:
        for b2 in bl:
            d1 = b1 & ~b2
            d2 = b2 & ~b1
            for e in elements(d1):
                if not any((b1 ^ (1 << e)) | (1 << f) in bs for f in elements(d2)):
                    return b1, b2, e
    return None


def from_bases(b, n, trusted=False, allow_large=False):
    """Matroid whose bases are b.bases; r(X) = max |B & X|.

    For n <= 16 the exchange axiom is checked, via submodularity of the
    derived rank function (equivalent for a family of equal-size sets).
    Larger inputs need trusted=True, which is recorded in provenance.
    """
    check_size(n, allow_large)
    if any(x >> n for x in b.bases):
        raise ArgumentError("basis uses an element outside the ground set")
    size = 1 << n
    indep = np.zeros(size, dtype=bool)
    indep[np.fromiter(b.bases, dtype=np.int64)] = True
    for i in range(n):
        v = indep.reshape(-1, 2, 1 << i)
        v[:, 0, :] |= v[:, 1, :]
    ranks = np.where(indep, popcounts(n), 0).astype(np.uint8)
    for i in range(n):
        v = ranks.reshape(-1, 2, 1 << i)
        np.maximum(v[:, 1, :], v[:, 0, :], out=v[:, 1, :])
    validated = False
    if n <= VALIDATE_BASES_UP_TO:
        if _submodular_violation(ranks, n) is not None:
            w = _exchange_witness(b.bases)
            raise InvalidBasesError(
                "bases violate the exchange axiom"
                + (f": B1={elements(w[0])}, B2={elements(w[1])}, e={w[2]}" if w else ""),
                witness=w)
        validated = True
    elif not trusted:
        raise ArgumentError(f"cannot validate {n}-element bases; pass trusted=True")
    return Matroid(ranks, None, Provenance("bases", b, {"validated": validated}), allow_large)


# minors and friends
def _view(ranks, n, delete, contract):
    t = ranks.reshape((2,) * n)
    idx = []
    for k in range(n):
        bit = 1 << (n - 1 - k)
        idx.append(0 if delete & bit else 1 if contract & bit else slice(None))
    sub = np.ascontiguousarray(t[tuple(idx)]).reshape(-1)
    return sub - ranks[contract]


def minor(m, mode, s):
    s = m._check(s)
    if s == 0:
        raise ArgumentError("minor needs a nonempty set")
    if s == m.full:
        raise DegenerateMatroidError("minor would leave the empty matroid")
    if mode == "delete":
        ranks = _view(m.ranks, m.n, s, 0)
    elif mode == "contract":
        ranks = _view(m.ranks, m.n, 0, s)
    else:
        raise ArgumentError(f"unknown minor mode {mode!r}")
    keep = [e for e in range(m.n) if not (s >> e) & 1]
    names = tuple(m.names[e] for e in keep) if m.names else None
    prov = Provenance("minor-of", m, {"mode": mode, "removed": s, "index_map": tuple(keep)})
    return Matroid(ranks, names, prov, allow_large=True)


def dual(m):
    return m.dual()


def rank(m, x):
    return m.rank(x)


def connectivity(m, x):
    return m.lam(x)


def local_conn(m, x, y, dualize=False):
    return m.local_conn(x, y, dual=dualize)


def closure(m, x, dualize=False):
    return m.closure(x, dual=dualize)


def relax(m, h):
    h = m._check(h)
    k = popcount(h)
    if not m.is_circuit(h):
        raise PreconditionError(f"{elements(h)} is not a circuit")
    if m.rank(h) != m.r - 1 or m.closure(h) != h:
        raise PreconditionError(f"{elements(h)} is not a hyperplane")
    bases = set(int(b) for b in m.bases())
    bases.add(h)
    trusted = m.n > VALIDATE_BASES_UP_TO
    out = from_bases(BasesList(m.r, frozenset(bases)), m.n, trusted=trusted, allow_large=True)
    return Matroid(out.ranks, m.names, Provenance("relaxed", m, {"relaxed": h, "validated": not trusted}),
                   allow_large=True)


def simplify_cosimplify(m, mode):
    if mode == "co":
        return simplify_cosimplify(m.dual(), "si").dual()
    if mode != "si":
        raise ArgumentError(f"unknown mode {mode!r}")
    kept = []
    for e in range(m.n):
        if m.ranks[1 << e] == 0:
            continue
        if any(m.ranks[(1 << e) | (1 << k)] == 1 for k in kept):
            continue
        kept.append(e)
    if not kept:
        raise DegenerateMatroidError("simplification leaves no elements")
    drop = m.full
    for e in kept:
        drop &= ~(1 << e)
    return minor(m, "delete", drop) if drop else m


def uniform(r, n):
    pc = popcounts(n)
    return Matroid(np.minimum(pc, r), None, Provenance("bases", None, {"uniform": (r, n)}))


def direct_sum(a, b):
    """Direct sum with a's elements first."""
    ra = a.ranks.astype(np.int16)
    rb = b.ranks.astype(np.int16)
    t = (rb[:, None] + ra[None, :]).reshape(-1).astype(np.uint8)
    return Matroid(t)
