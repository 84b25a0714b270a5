"""Bitmask helpers. Bit i of a mask stands for ground-set element i."""
from functools import lru_cache

import numpy as np


def mask_of(elems):
    m = 0
    for e in elems:
        m |= 1 << e
    return m


def elements(mask):
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def popcount(mask):
    return bin(mask).count("1")


def lowbit(mask):
    return (mask & -mask).bit_length() - 1


@lru_cache(maxsize=32)
def popcounts(n):
    """Read-only uint8 array with the popcount of every n-bit mask."""
    pc = np.zeros(1 << n, dtype=np.uint8)
    for k in range(n):
        pc[1 << k: 2 << k] = pc[: 1 << k] + 1
    pc.setflags(write=False)
    return pc


def remap_table(table, perm):
    """Table of the same function after relabelling element i as perm[i]."""
    n = len(perm)
    idx = np.zeros(1, dtype=np.int64)
    # build new-index array in old-mask order
    for i in range(n):
        idx = np.concatenate([idx, idx + (1 << perm[i])])
    out = np.empty_like(table)
    out[idx] = table
    return out
