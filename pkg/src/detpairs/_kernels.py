"""Subset-DP rank table kernels.

Masks are visited in increasing order. For a mask X with lowest bit k, the
mask X minus k was the last one written at level lowbit(X minus k), so each
level keeps the state (an echelon basis, or a union-find forest) of exactly
that predecessor and one column or edge is added per step.
"""
import numpy as np
from numba import njit


@njit(cache=True)
def _lowbit(x):
    k = 0
    while not (x >> k) & 1:
        k += 1
    return k


@njit(cache=True)
def gfp_rank_table(cols, p):
    n, rows = cols.shape
    size = 1 << n
    ranks = np.zeros(size, np.uint8)
    inv = np.zeros(p, np.int64)
    for a in range(1, p):
        r = 1
        b = a
        e = p - 2
        while e > 0:
            if e & 1:
                r = r * b % p
            b = b * b % p
            e >>= 1
        inv[a] = r
    basis = np.zeros((n + 1, rows, rows), np.int64)
    piv = np.zeros((n + 1, rows), np.int64)
    cnt = np.zeros(n + 1, np.int64)
    v = np.zeros(rows, np.int64)
    for X in range(1, size):
        k = _lowbit(X)
        Y = X ^ (1 << k)
        src = n if Y == 0 else _lowbit(Y)
        c = cnt[src]
        for i in range(c):
            piv[k, i] = piv[src, i]
            for j in range(rows):
                basis[k, i, j] = basis[src, i, j]
        for j in range(rows):
            v[j] = cols[k, j] % p
        for i in range(c):
            f = v[piv[k, i]]
            if f != 0:
                for j in range(rows):
                    v[j] = (v[j] - f * basis[k, i, j]) % p
        lead = -1
        for j in range(rows):
            if v[j] != 0:
                lead = j
                break
        if lead >= 0:
            s = inv[v[lead]]
            for j in range(rows):
                basis[k, c, j] = v[j] * s % p
            piv[k, c] = lead
            c += 1
        cnt[k] = c
        ranks[X] = c
    return ranks


@njit(cache=True)
def graphic_rank_table(ends, nverts):
    n = ends.shape[0]
    size = 1 << n
    ranks = np.zeros(size, np.uint8)
    parent = np.zeros((n + 1, nverts), np.int64)
    cnt = np.zeros(n + 1, np.int64)
    for i in range(nverts):
        parent[n, i] = i
    for X in range(1, size):
        k = _lowbit(X)
        Y = X ^ (1 << k)
        src = n if Y == 0 else _lowbit(Y)
        for i in range(nverts):
            parent[k, i] = parent[src, i]
        a = ends[k, 0]
        while parent[k, a] != a:
            a = parent[k, a]
        b = ends[k, 1]
        while parent[k, b] != b:
            b = parent[k, b]
        c = cnt[src]
        if a != b:
            parent[k, a] = b
            c += 1
        cnt[k] = c
        ranks[X] = c
    return ranks
