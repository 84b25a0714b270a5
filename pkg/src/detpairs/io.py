"""graph6, the three matroid text formats, and verification reports."""
import csv
import dataclasses
import io as _io
import json

import numpy as np

from . import __version__
from .errors import ArgumentError, ParseError
from .gfp import LinearRepGFp
from .graphs import Graph
from .matroid import BasesList, from_bases, from_gfp_matrix, from_graph

GRAPH6_HEADER = ">>graph6<<"


# graph6

def _encode_size(n):
    if n < 0:
        raise ArgumentError("negative vertex count")
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    if n <= 68719476735:
        return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))
    raise ArgumentError("too many vertices for graph6")


def graph6_encode(g):
    if not g.is_simple():
        raise ArgumentError("graph6 encodes simple graphs only")
    n = g.vertex_count
    adj = set()
    for u, v in g.edges:
        adj.add((min(u, v), max(u, v)))
    bits = [1 if (i, j) in adj else 0 for j in range(n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    body = "".join(chr(63 + int("".join(map(str, bits[k:k + 6])), 2)) for k in range(0, len(bits), 6))
    return _encode_size(n) + body


def graph6_decode(line):
    text = line.rstrip("\r\n")
    start = len(GRAPH6_HEADER) if text.startswith(GRAPH6_HEADER) else 0
    data = text[start:]
    for i, ch in enumerate(data):
        if not 63 <= ord(ch) <= 126:
            raise ParseError(f"invalid graph6 byte {ch!r}", start + i)
    if not data:
        raise ParseError("empty graph6 line", start)
    vals = [ord(c) - 63 for c in data]
    if vals[0] < 63:
        n, pos = vals[0], 1
    elif len(vals) >= 2 and vals[1] < 63:
        if len(vals) < 4:
            raise ParseError("truncated size field", start + len(vals))
        n = (vals[1] << 12) | (vals[2] << 6) | vals[3]
        pos = 4
    else:
        if len(vals) < 8:
            raise ParseError("truncated size field", start + len(vals))
        n = 0
        for v in vals[2:8]:
            n = (n << 6) | v
        pos = 8
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = vals[pos:]
    if len(body) != need:
        raise ParseError(f"expected {need} data bytes, found {len(body)}", start + pos + min(len(body), need))
    edges = []
    k = 0
    for j in range(n):
        for i in range(j):
            byte, off = divmod(k, 6)
            if (body[byte] >> (5 - off)) & 1:
                edges.append((i, j))
            k += 1
    if need and nbits % 6:
        spare = 6 - nbits % 6
        if body[-1] & ((1 << spare) - 1):
            raise ParseError("nonzero padding bits", start + pos + need - 1)
    return Graph(n, edges)


def graph6_codec(direction, payload):
    if direction == "decode":
        return graph6_decode(payload)
    if direction == "encode":
        return graph6_encode(payload)
    raise ArgumentError(f"unknown direction {direction!r}")


def read_graph6_lines(text):
    out = []
    for line in text.splitlines():
        if line.strip():
            out.append(graph6_decode(line.strip()))
    return out


# matroid formats

def _content_lines(text):
    out = []
    for no, line in enumerate(text.splitlines(), 1):
        s = line.split("#", 1)[0].strip()
        if s:
            out.append((no, s))
    return out


def _ints(no, tokens):
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"line {no}: expected integers", no) from None


def read_graph(text):
    lines = _content_lines(text)
    if not lines:
        raise ParseError("empty input", 0)
    no, head = lines[0]
    tok = head.split()
    if tok[0] != "graph" or len(tok) != 3:
        raise ParseError(f"line {no}: expected 'graph n m'", no)
    n, mcount = _ints(no, tok[1:])
    if len(lines) - 1 != mcount:
        raise ParseError(f"line {no}: header declares {mcount} edges, found {len(lines) - 1}", no)
    edges, labels = [], []
    for no, line in lines[1:]:
        tok = line.split()
        if len(tok) not in (2, 3):
            raise ParseError(f"line {no}: expected 'u v [label]'", no)
        u, v = _ints(no, tok[:2])
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"line {no}: endpoint out of range", no)
        edges.append((u, v))
        labels.append(tok[2] if len(tok) == 3 else None)
    has = any(lb is not None for lb in labels)
    names = tuple(lb if lb is not None else str(i) for i, lb in enumerate(labels)) if has else None
    return Graph(n, edges, names)


def write_graph(g):
    out = [f"graph {g.vertex_count} {g.edge_count}"]
    for i, (u, v) in enumerate(g.edges):
        out.append(f"{u} {v} {g.labels[i]}" if g.labels else f"{u} {v}")
    return "\n".join(out) + "\n"


def read_matroid(text, allow_large=False, trusted=False):
    lines = _content_lines(text)
    if not lines:
        raise ParseError("empty input", 0)
    no, head = lines[0]
    tok = head.split()
    kind = tok[0]
    if kind == "graph":
        return from_graph(read_graph(text), allow_large=allow_large)
    if kind == "gfp":
        if len(tok) != 4:
            raise ParseError(f"line {no}: expected 'gfp p r n'", no)
        p, r, n = _ints(no, tok[1:])
        if r < 1 or n < 1:
            raise ParseError(f"line {no}: need at least one row and one column", no)
        if len(lines) - 1 != r:
            raise ParseError(f"line {no}: header declares {r} rows, found {len(lines) - 1}", no)
        rows = []
        for no, line in lines[1:]:
            row = _ints(no, line.split())
            if len(row) != n:
                raise ParseError(f"line {no}: expected {n} residues", no)
            if any(not 0 <= a < p for a in row):
                raise ParseError(f"line {no}: residue outside [0, {p})", no)
            rows.append(row)
        try:
            rep = LinearRepGFp(p, tuple(tuple(r_) for r_ in rows))
        except ArgumentError as exc:
            raise ParseError(f"line {lines[0][0]}: {exc}", lines[0][0]) from None
        return from_gfp_matrix(rep, allow_large=allow_large)
    if kind == "bases":
        if len(tok) != 3:
            raise ParseError(f"line {no}: expected 'bases n r'", no)
        n, r = _ints(no, tok[1:])
        bases = set()
        for no, line in lines[1:]:
            idx = _ints(no, line.split())
            if len(idx) != r or sorted(idx) != idx or len(set(idx)) != r:
                raise ParseError(f"line {no}: expected {r} sorted distinct indices", no)
            if any(not 0 <= i < n for i in idx):
                raise ParseError(f"line {no}: index out of range", no)
            bases.add(sum(1 << i for i in idx))
        if not bases:
            raise ParseError("no bases listed", no)
        return from_bases(BasesList(r, frozenset(bases)), n, trusted=trusted, allow_large=allow_large)
    raise ParseError(f"line {no}: unknown format {kind!r}", no)


def _graph_of(m):
    prov = m.provenance
    return prov.source if prov and prov.kind == "graphic" and isinstance(prov.source, Graph) else None


def _rep_of(m):
    prov = m.provenance
    if prov and isinstance(prov.source, LinearRepGFp) and prov.source.ncols == m.n:
        return prov.source
    return None


def write_matroid(m, fmt=None):
    """Text form of m; fmt defaults to the format suggested by its provenance."""
    if fmt is None:
        fmt = "graph" if _graph_of(m) is not None else "gfp" if _rep_of(m) is not None else "bases"
    if fmt == "graph":
        g = _graph_of(m)
        if g is None:
            raise ArgumentError("matroid has no graph representation on record")
        return write_graph(g)
    if fmt == "gfp":
        rep = _rep_of(m)
        if rep is None:
            raise ArgumentError("matroid has no GF(p) representation on record")
        out = [f"gfp {rep.prime} {len(rep.rows)} {rep.ncols}"]
        out += [" ".join(str(a) for a in row) for row in rep.rows]
        return "\n".join(out) + "\n"
    if fmt == "bases":
        bases = [int(b) for b in m.bases()]
        out = [f"bases {m.n} {m.r}"]
        for b in sorted(bases, key=lambda x: [i for i in range(m.n) if (x >> i) & 1]):
            out.append(" ".join(str(i) for i in range(m.n) if (b >> i) & 1))
        return "\n".join(out) + "\n"
    raise ArgumentError(f"unknown matroid format {fmt!r}")


def matroid_codec(direction, payload, fmt=None, **kw):
    if direction == "decode":
        return read_matroid(payload, **kw)
    if direction == "encode":
        return write_matroid(payload, fmt)
    raise ArgumentError(f"unknown direction {direction!r}")


# reports

@dataclasses.dataclass
class ReportRecord:
    instance_id: str
    source: str
    spec: str
    elements: int
    outcome: str
    witness: object = None
    timing_ms: float = 0.0
    version: str = __version__
    findings: list = dataclasses.field(default_factory=list)


REPORT_FIELDS = [f.name for f in dataclasses.fields(ReportRecord)]


def to_jsonable(obj):
    """Plain JSON data for certificates, verdicts and numpy scalars."""
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = [to_jsonable(v) for v in obj]
        return sorted(items, key=json.dumps) if isinstance(obj, (set, frozenset)) else items
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    return obj


def record_dict(rec):
    return {name: to_jsonable(getattr(rec, name)) for name in REPORT_FIELDS}


def write_report(records, fmt="json"):
    if fmt == "json":
        return json.dumps([record_dict(r) for r in records], indent=1) + "\n"
    if fmt == "csv":
        buf = _io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(REPORT_FIELDS)
        for r in records:
            d = record_dict(r)
            w.writerow([json.dumps(d[k]) if isinstance(d[k], (dict, list)) or d[k] is None else d[k]
                        for k in REPORT_FIELDS])
        return buf.getvalue()
    raise ArgumentError(f"unknown report format {fmt!r}")


def read_report(text):
    return [ReportRecord(**d) for d in json.loads(text)]
