"""Labeled multigraphs. Edge order defines the matroid element order."""
from dataclasses import dataclass
from itertools import combinations

from .errors import ArgumentError


@dataclass(frozen=True)
class Graph:
    vertex_count: int
    edges: tuple
    labels: tuple = None

    def __post_init__(self):
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        for u, v in edges:
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise ArgumentError(f"edge ({u}, {v}) has an endpoint out of range")
        object.__setattr__(self, "edges", edges)
        if self.labels is not None:
            labels = tuple(self.labels)
            if len(labels) != len(edges):
                raise ArgumentError("need one label per edge")
            object.__setattr__(self, "labels", labels)

    @property
    def edge_count(self):
        return len(self.edges)

    def label(self, i):
        return self.labels[i] if self.labels else str(i)

    def degrees(self):
        deg = [0] * self.vertex_count
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def is_simple(self):
        seen = set()
        for u, v in self.edges:
            if u == v:
                return False
            key = (min(u, v), max(u, v))
            if key in seen:
                return False
            seen.add(key)
        return True

    def adjacency(self):
        adj = [0] * self.vertex_count
        for u, v in self.edges:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return adj


def _check_edge(g, e):
    if not 0 <= e < g.edge_count:
        raise ArgumentError(f"edge index {e} out of range")


def _drop_vertices(g, edges, labels, keep):
    """Renumber vertices listed in keep (sorted) to 0..len(keep)-1."""
    new = {v: i for i, v in enumerate(keep)}
    return Graph(len(keep), tuple((new[u], new[v]) for u, v in edges), labels)


def graph_minor(g, mode, e):
    """Delete or contract edge e.

    Contraction keeps parallels and loops that arise. Contracting a loop is
    the same as deleting it. Deletion drops vertices left isolated.
    """
    _check_edge(g, e)
    u, v = g.edges[e]
    rest = [ed for i, ed in enumerate(g.edges) if i != e]
    labels = None if g.labels is None else tuple(l for i, l in enumerate(g.labels) if i != e)
    if mode == "contract" and u != v:
        keep, gone = min(u, v), max(u, v)
        rest = [(keep if a == gone else a, keep if b == gone else b) for a, b in rest]
        verts = [w for w in range(g.vertex_count) if w != gone]
        return _drop_vertices(g, rest, labels, verts)
    if mode not in ("delete", "contract"):
        raise ArgumentError(f"unknown minor mode {mode!r}")
    touched = set()
    for a, b in rest:
        touched.add(a)
        touched.add(b)
    return _drop_vertices(g, rest, labels, sorted(touched))


def delete_edges(g, es):
    for e in sorted(es, reverse=True):
        g = graph_minor(g, "delete", e)
    return g


def contract_edges(g, es):
    for e in sorted(es, reverse=True):
        g = graph_minor(g, "contract", e)
    return g


def _connected_without(adj, n, removed):
    alive = ((1 << n) - 1) & ~removed
    if not alive:
        return True
    start = alive & -alive
    seen = start
    frontier = start
    while frontier:
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            nxt |= adj[low.bit_length() - 1]
            f ^= low
        nxt &= alive & ~seen
        seen |= nxt
        frontier = nxt
    return seen == alive


def is_simple_3connected(g):
    n = g.vertex_count
    if n < 4 or not g.is_simple():
        return False
    adj = g.adjacency()
    if not _connected_without(adj, n, 0):
        return False
    for a in range(n):
        if not _connected_without(adj, n, 1 << a):
            return False
    for a, b in combinations(range(n), 2):
        if not _connected_without(adj, n, (1 << a) | (1 << b)):
            return False
    return True


def subdivide(g, e, k):
    """Replace edge e by a path through k new vertices.

    Edge e keeps its index as the first path edge; the other k path edges are
    appended. Returns (graph, new vertex indices). k = 0 is the identity.
    """
    _check_edge(g, e)
    if k < 0:
        raise ArgumentError("subdivision count must be non-negative")
    if k == 0:
        return g, []
    u, v = g.edges[e]
    new = list(range(g.vertex_count, g.vertex_count + k))
    edges = list(g.edges)
    edges[e] = (u, new[0])
    path = new + [v]
    added = [(path[i], path[i + 1]) for i in range(k)]
    labels = None
    if g.labels is not None:
        base = g.labels[e]
        labels = g.labels + tuple(f"{base}.{i + 1}" for i in range(k))
    return Graph(g.vertex_count + k, tuple(edges + added), labels), new


def add_vertex(g, nbrs, labels=None):
    """Add a vertex joined to each vertex in nbrs. Returns (graph, vertex)."""
    w = g.vertex_count
    edges = g.edges + tuple((u, w) for u in nbrs)
    lab = None
    if g.labels is not None:
        lab = g.labels + tuple(labels if labels else (f"e{len(g.edges) + i}" for i in range(len(nbrs))))
    return Graph(w + 1, edges, lab), w


def add_edge(g, u, v, label=None):
    lab = None if g.labels is None else g.labels + (label or f"e{len(g.edges)}",)
    return Graph(g.vertex_count, g.edges + ((u, v),), lab)
