"""Separations and 3-connectivity over rank tables."""
from dataclasses import dataclass

import numpy as np

from .bits import popcounts
from .errors import ArgumentError, LemmaViolation, PreconditionError
from .matroid import simplify_cosimplify


@dataclass(frozen=True)
class Separation:
    side: int
    k: int
    kind: str = "plain"  # plain | vertical | cyclic
    e: int = None


def table_is_3connected(ranks, n):
    """3-connectivity straight from a rank table (no Matroid wrapper)."""
    if n <= 1:
        return True
    half = 1 << (n - 1)
    r = ranks.astype(np.int16)
    # masks with the top bit clear meet each complementary pair once
    lam = r[1:half] + r[::-1][1:half] - r[-1]
    if (lam < 1).any():
        return False
    if n < 4:
        return True
    pc = popcounts(n)[1:half]
    return not ((lam < 2) & (pc >= 2) & (pc <= n - 2)).any()


def is_3connected(m):
    return table_is_3connected(m.ranks, m.n)


def find_k_separation(m, k):
    if k not in (1, 2):
        raise ArgumentError("k must be 1 or 2")
    pc = popcounts(m.n).astype(np.int16)
    ok = (m.lam_table == k - 1) & (pc >= k) & (m.n - pc >= k)
    cand = np.flatnonzero(ok)
    if cand.size == 0:
        return None
    best = cand[np.lexsort((cand, pc[cand]))[0]]
    return Separation(int(best), k)


def _vertical_sides(ranks, n, e):
    r = ranks.astype(np.int16)
    full = (1 << n) - 1
    ebit = 1 << e
    masks = np.arange(1 << n, dtype=np.int64)
    rest = full ^ ebit
    lowest = rest & -rest
    x = masks[((masks & ebit) == 0) & ((masks & lowest) != 0)]
    y = rest ^ x
    lam = r + r[::-1] - r[-1]
    ok = (lam[x] == 2) & (lam[y] == 2) & (r[x | ebit] == r[x]) & (r[y | ebit] == r[y])
    ok &= (r[x] >= 3) & (r[y] >= 3)
    return x[ok]


def three_separations_at(m, e, mode="vertical", check=True):
    """All vertical (or cyclic) 3-separations (X, {e}, Y), one per unordered pair.

    X is the side containing the lowest element other than e. When m is
    3-connected the result is checked against si(M/e) (co(M\\e) for cyclic).
    """
    if not 0 <= e < m.n:
        raise ArgumentError(f"element {e} out of range")
    if mode == "vertical":
        ranks = m.ranks
    elif mode == "cyclic":
        ranks = m.dual_ranks
    else:
        raise ArgumentError(f"unknown mode {mode!r}")
    if m.n < 2:
        return []
    seps = [Separation(int(x), 3, mode, e) for x in _vertical_sides(ranks, m.n, e)]
    if check and m.n >= 2 and is_3connected(m):
        other = m.contract(1 << e) if mode == "vertical" else m.delete(1 << e)
        red = simplify_cosimplify(other, "si" if mode == "vertical" else "co")
        if (not seps) != is_3connected(red):
            raise LemmaViolation(f"{mode} 3-separations at {e} disagree with the reduced minor")
    return seps


def bixby_split(m, e):
    """Which of si(M/e) and co(M\\e) is 3-connected: 'si_ok', 'co_ok' or 'both'."""
    if m.n < 4 or not is_3connected(m):
        raise PreconditionError("needs a 3-connected matroid on at least 4 elements")
    if not 0 <= e < m.n:
        raise ArgumentError(f"element {e} out of range")
    si_ok = is_3connected(simplify_cosimplify(m.contract(1 << e), "si"))
    co_ok = is_3connected(simplify_cosimplify(m.delete(1 << e), "co"))
    if si_ok and co_ok:
        return "both"
    if si_ok:
        return "si_ok"
    if co_ok:
        return "co_ok"
    raise LemmaViolation(f"neither si(M/{e}) nor co(M\\{e}) is 3-connected")
