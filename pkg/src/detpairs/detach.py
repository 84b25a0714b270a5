"""Detachable pairs: M\\e\\f or M/e/f 3-connected."""
from dataclasses import dataclass
from itertools import combinations

from .connectivity import table_is_3connected
from .errors import ArgumentError, PreconditionError
from .graphs import contract_edges, delete_edges, is_simple_3connected
from .matroid import _view

MIN_PAIR_SIZE = 6


@dataclass(frozen=True)
class PairVerdict:
    e: int
    f: int
    delete_ok: bool
    contract_ok: bool

    @property
    def detachable(self):
        return self.delete_ok or self.contract_ok


def _check_pair(n, e, f):
    if e == f:
        raise ArgumentError("a pair needs two distinct elements")
    for x in (e, f):
        if not 0 <= x < n:
            raise ArgumentError(f"element {x} outside ground set of size {n}")


def pair_status(m, e, f):
    _check_pair(m.n, e, f)
    if m.n < MIN_PAIR_SIZE:
        raise PreconditionError(f"pair checks need at least {MIN_PAIR_SIZE} elements")
    s = (1 << e) | (1 << f)
    dele = table_is_3connected(_view(m.ranks, m.n, s, 0), m.n - 2)
    con = table_is_3connected(_view(m.ranks, m.n, 0, s), m.n - 2)
    return PairVerdict(min(e, f), max(e, f), dele, con)


def _scan(n, status, mode):
    if mode not in ("first", "all"):
        raise ArgumentError(f"unknown mode {mode!r}")
    out = []
    for e, f in combinations(range(n), 2):
        v = status(e, f)
        if v.detachable:
            out.append(v)
            if mode == "first":
                break
    return out


def find_detachable_pairs(m, mode="all"):
    """Detachable pairs in lexicographic order."""
    if m.n < MIN_PAIR_SIZE:
        raise PreconditionError(f"pair search needs at least {MIN_PAIR_SIZE} elements")
    return _scan(m.n, lambda e, f: pair_status(m, e, f), mode)


def all_pair_verdicts(m):
    return [pair_status(m, e, f) for e, f in combinations(range(m.n), 2)]


def graph_pair_status(g, e, f):
    _check_pair(g.edge_count, e, f)
    dele = is_simple_3connected(delete_edges(g, [e, f]))
    con = is_simple_3connected(contract_edges(g, [e, f]))
    return PairVerdict(min(e, f), max(e, f), dele, con)


def find_graph_detachable_pairs(g, mode="all"):
    return _scan(g.edge_count, lambda e, f: graph_pair_status(g, e, f), mode)
