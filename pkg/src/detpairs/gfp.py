"""Matrices over GF(p)."""
from dataclasses import dataclass

from .errors import ArgumentError


def is_prime(p):
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def next_prime_above(x):
    p = x + 1
    while not is_prime(p):
        p += 1
    return p


@dataclass(frozen=True)
class LinearRepGFp:
    prime: int
    rows: tuple

    def __post_init__(self):
        if not is_prime(self.prime):
            raise ArgumentError(f"modulus {self.prime} is not prime")
        rows = tuple(tuple(int(a) % self.prime for a in row) for row in self.rows)
        if rows and len({len(r) for r in rows}) != 1:
            raise ArgumentError("rows have different lengths")
        object.__setattr__(self, "rows", rows)

    @property
    def ncols(self):
        return len(self.rows[0]) if self.rows else 0

    def column(self, j):
        return tuple(r[j] for r in self.rows)

    @classmethod
    def from_columns(cls, prime, cols):
        cols = [tuple(c) for c in cols]
        nrows = len(cols[0]) if cols else 0
        return cls(prime, tuple(tuple(c[i] for c in cols) for i in range(nrows)))


def rank_mod_p(rows, p):
    """Rank of a list of row vectors over GF(p) by Gaussian elimination."""
    m = [[a % p for a in r] for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        pr = next((i for i in range(rank, len(m)) if m[i][c]), None)
        if pr is None:
            continue
        m[rank], m[pr] = m[pr], m[rank]
        inv = pow(m[rank][c], p - 2, p)
        m[rank] = [a * inv % p for a in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][c]:
                f = m[i][c]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def delete_columns(rep, cols):
    drop = set(cols)
    keep = [j for j in range(rep.ncols) if j not in drop]
    return LinearRepGFp(rep.prime, tuple(tuple(row[j] for j in keep) for row in rep.rows))


def contract_column(rep, j):
    """Representation of M/j: pivot on column j, then drop its row and column."""
    p = rep.prime
    rows = [list(r) for r in rep.rows]
    piv = next((i for i, r in enumerate(rows) if r[j]), None)
    if piv is None:
        # a loop: contracting it is deleting it
        return delete_columns(rep, [j])
    inv = pow(rows[piv][j], p - 2, p)
    prow = [a * inv % p for a in rows[piv]]
    out = []
    for i, r in enumerate(rows):
        if i == piv:
            continue
        f = r[j]
        out.append([(a - f * b) % p for a, b in zip(r, prow)] if f else r)
    if not out:
        out = [[0] * rep.ncols]
    return delete_columns(LinearRepGFp(p, tuple(tuple(r) for r in out)), [j])


def kernel_mod_p(rows, p, width):
    """Basis of {z : r . z = 0 for every row r}, vectors of length width."""
    a = [[x % p for x in r] for r in rows]
    pivots = []
    rank = 0
    for c in range(width):
        pr = next((i for i in range(rank, len(a)) if a[i][c]), None)
        if pr is None:
            continue
        a[rank], a[pr] = a[pr], a[rank]
        inv = pow(a[rank][c], p - 2, p)
        a[rank] = [x * inv % p for x in a[rank]]
        for i in range(len(a)):
            if i != rank and a[i][c]:
                f = a[i][c]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[rank])]
        pivots.append(c)
        rank += 1
    basis = []
    for free in (c for c in range(width) if c not in pivots):
        z = [0] * width
        z[free] = 1
        for i, pc in enumerate(pivots):
            z[pc] = -a[i][free] % p
        basis.append(z)
    return basis


def dual_rep(rep):
    """Representation of the dual: [I | D] in reduced form becomes [-D^T | I]."""
    p, n = rep.prime, rep.ncols
    a = [[x % p for x in r] for r in rep.rows]
    pivots = []
    rank = 0
    for c in range(n):
        pr = next((i for i in range(rank, len(a)) if a[i][c]), None)
        if pr is None:
            continue
        a[rank], a[pr] = a[pr], a[rank]
        inv = pow(a[rank][c], p - 2, p)
        a[rank] = [x * inv % p for x in a[rank]]
        for i in range(len(a)):
            if i != rank and a[i][c]:
                f = a[i][c]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[rank])]
        pivots.append(c)
        rank += 1
    free = [c for c in range(n) if c not in pivots]
    if not free:
        return LinearRepGFp(p, (tuple([0] * n),))
    rows = []
    for f in free:
        row = [0] * n
        row[f] = 1
        for i, pc in enumerate(pivots):
            row[pc] = -a[i][f] % p
        rows.append(tuple(row))
    return LinearRepGFp(p, tuple(rows))


def incidence_rep(vertex_count, edges, prime=2):
    """Vertex-edge incidence matrix; over any field it represents the cycle matroid."""
    rows = [[0] * len(edges) for _ in range(max(vertex_count, 1))]
    for j, (u, v) in enumerate(edges):
        if u != v:
            rows[u][j] = 1
            rows[v][j] = -1 % prime
    return LinearRepGFp(prime, tuple(tuple(r) for r in rows))
