"""Generators for the exceptional families with no detachable pairs."""
import json
from dataclasses import dataclass, field
from importlib import resources

from .errors import ConstructionError, ParameterError, UnsupportedParametersError
from .gfp import LinearRepGFp, next_prime_above
from .graphs import Graph
from .matroid import Provenance, from_gfp_matrix, from_graph, relax

GRAPH_FAMILIES = ("wheel", "mutant_wheel", "twisted_wheel", "warped_wheel", "multi_wheel",
                  "stretched_wheel", "k3m", "k3m_prime", "k3m_doubleprime")
MATROID_FAMILIES = ("whirl", "free_spike", "hinged_triad_paddle", "even_fan_spike",
                    "even_fan_paddle", "quasi_triad_paddle", "tri_paddle_copaddle", "accordion")
FAMILIES = GRAPH_FAMILIES + MATROID_FAMILIES
PETAL_KINDS = ("augmented", "co_augmented", "quad", "near_quad")
LINEAR_PRIME = 7


@dataclass
class FamilySpec:
    family: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ParameterError(f"unknown family {self.family!r}")
        self.params = dict(self.params)

    def get(self, key, default=None):
        return self.params.get(key, default)

    def key(self):
        """Stable text key, also used for fixture file names."""
        parts = []
        for k in sorted(self.params):
            v = self.params[k]
            if isinstance(v, (list, tuple)):
                v = "-".join(str(x) for x in v)
            elif isinstance(v, bool):
                v = int(v)
            parts.append(f"{k}={v}")
        return ",".join(parts) or "default"

    def to_json(self):
        return json.dumps({"family": self.family, "params": self.params}, sort_keys=True)

    @classmethod
    def from_json(cls, text):
        obj = json.loads(text) if isinstance(text, str) else text
        return cls(obj["family"], obj.get("params", {}))


def _need_int(spec, name, lo, why):
    v = spec.get(name)
    if not isinstance(v, int) or isinstance(v, bool) or v < lo:
        raise ParameterError(f"{spec.family}: {name} must be an integer >= {lo} ({why})")
    return v


class _Builder:
    def __init__(self, vertices=0):
        self.n = vertices
        self.edges = []
        self.labels = []

    def vertex(self):
        self.n += 1
        return self.n - 1

    def edge(self, u, v, label):
        self.edges.append((u, v))
        self.labels.append(label)

    def path_with_spokes(self, a, b, k, hub, tag):
        """Subdivide ab with k new vertices, each joined to hub."""
        prev = a
        for i in range(1, k + 1):
            w = self.vertex()
            self.edge(prev, w, f"{tag}.path{i}")
            self.edge(w, hub, f"{tag}.spoke{i}")
            prev = w
        self.edge(prev, b, f"{tag}.path{k + 1}")

    def graph(self):
        return Graph(self.n, self.edges, self.labels)


def _wheel_into(b, n, hub=0):
    for i in range(1, n + 1):
        b.edge(hub, i, f"spoke{i}")
    for i in range(1, n + 1):
        b.edge(i, i % n + 1, f"rim{i}")


def _wheel(spec):
    n = _need_int(spec, "n", 3, "a wheel needs a cycle of length at least 3")
    b = _Builder(n + 1)
    _wheel_into(b, n)
    return b.graph()


def _mutant_wheel(spec):
    n = _need_int(spec, "n", 4, "needs spokes a1, a2, a3 and rim edges b1, b2 off the hub")
    b = _Builder(n + 1)
    # spokes a_i = hub-i, rim b_i = i-(i+1); a1 and a2 are subdivided
    for i in range(3, n + 1):
        b.edge(0, i, f"a{i}")
    for i in range(1, n + 1):
        b.edge(i, i % n + 1, f"b{i}")
    x, y = b.vertex(), b.vertex()
    b.edge(x, 1, "a1.1")
    b.edge(0, x, "a1.2")
    b.edge(x, 2, "xu")
    b.edge(0, y, "a2.1")
    b.edge(y, 2, "a2.2")
    b.edge(y, 3, "yv")
    return b.graph()


def _twisted_wheel(spec):
    j = _need_int(spec, "j", 0, "j >= 0")
    k = _need_int(spec, "k", 0, "k >= 0")
    if j + k < 1:
        raise ParameterError("twisted_wheel: needs j + k >= 1")
    e1, e2, f1, f2 = 0, 1, 2, 3
    b = _Builder(4)
    for u, v in ((e1, f1), (e1, f2), (e2, f1), (e2, f2)):
        b.edge(u, v, f"k4.{u}{v}")
    b.path_with_spokes(e1, e2, j, f1, "e")
    b.path_with_spokes(f1, f2, k, e1, "f")
    return b.graph()


def _warped_wheel(spec):
    j = _need_int(spec, "j", 1, "j >= 1")
    k = _need_int(spec, "k", 1, "k >= 1")
    b = _Builder(5)
    h = 0
    for i in (2, 4):
        b.edge(h, i, f"spoke{i}")
    for i in range(1, 5):
        b.edge(i, i % 4 + 1, f"rim{i}")
    b.path_with_spokes(h, 1, j, 2, "hv1")
    b.path_with_spokes(h, 3, k, 4, "hv3")
    return b.graph()


def multi_wheel_branches(spec):
    br = spec.get("branches")
    if not isinstance(br, (list, tuple)) or not all(isinstance(s, int) and s >= 0 for s in br):
        raise ParameterError("multi_wheel: branches must be a list of subdivision counts")
    if len(br) < 3:
        raise ParameterError("multi_wheel: needs k >= 3 parallel edges")
    if len(br) >= 4 and min(br) < 1:
        raise ParameterError("multi_wheel: with k >= 4 every parallel edge is subdivided")
    if len(br) == 3 and sum(1 for s in br if s >= 1) < 2:
        raise ParameterError("multi_wheel: with k = 3 at least two parallel edges are subdivided")
    return list(br)


def _multi_wheel(spec):
    br = multi_wheel_branches(spec)
    u, h, v = 0, 1, 2
    b = _Builder(3)
    b.edge(h, v, "hv")
    for i, s in enumerate(br, 1):
        b.path_with_spokes(u, v, s, h, f"br{i}")
    return b.graph()


def _stretched_wheel(spec):
    n = _need_int(spec, "n", 3, "the base wheel has n >= 3 rim vertices")
    k = _need_int(spec, "k", 1, "k >= 1 new edges on e")
    b = _Builder(n + 1)
    for i in range(1, n + 1):
        b.edge(0, i, f"spoke{i}")
    for i in range(2, n + 1):
        b.edge(i, i % n + 1, f"rim{i}")
    z = b.vertex()
    b.edge(0, z, "xz")
    b.edge(1, z, "yz")
    b.path_with_spokes(1, 2, k, z, "e")
    return b.graph()


def _k3m_into(b, m):
    for i in range(m):
        for a in range(3):
            b.edge(a, 3 + i, f"p{i + 1}.{a + 1}")


def _k3m(spec, lo=2):
    m = _need_int(spec, "m", lo, f"m >= {lo}")
    b = _Builder(3 + m)
    _k3m_into(b, m)
    return b, m


def _k3m_graph(spec):
    return _k3m(spec)[0].graph()


def _k3m_prime(spec):
    b, _ = _k3m(spec)
    a, c = b.vertex(), b.vertex()
    for u in range(3):
        b.edge(a, u, f"a{u + 1}")
    b.edge(c, a, "ba")
    b.edge(c, 0, "b1")
    b.edge(c, 2, "b3")
    return b.graph()


def _k3m_doubleprime(spec):
    b, _ = _k3m(spec)
    a, c = b.vertex(), b.vertex()
    b.edge(a, 0, "a1")
    b.edge(a, 1, "a2")
    b.edge(c, a, "ba")
    b.edge(c, 1, "b2")
    b.edge(c, 2, "b3")
    b.edge(0, 2, "u1u3")
    return b.graph()


_GRAPH_GENERATORS = {
    "wheel": _wheel, "mutant_wheel": _mutant_wheel, "twisted_wheel": _twisted_wheel,
    "warped_wheel": _warped_wheel, "multi_wheel": _multi_wheel,
    "stretched_wheel": _stretched_wheel, "k3m": _k3m_graph, "k3m_prime": _k3m_prime,
    "k3m_doubleprime": _k3m_doubleprime,
}


def gen_graph(spec):
    if spec.family not in _GRAPH_FAMILIES_SET:
        raise ParameterError(f"{spec.family} is not a graph family")
    g = _GRAPH_GENERATORS[spec.family](spec)
    if not g.is_simple():
        raise ConstructionError(f"{spec.family} produced a non-simple graph", spec.params)
    return g


_GRAPH_FAMILIES_SET = frozenset(GRAPH_FAMILIES)


def _partitions(total, parts, lo):
    """Non-increasing lists of `parts` integers >= lo summing to total."""
    if parts == 0:
        if total == 0:
            yield []
        return
    for first in range(total - lo * (parts - 1), lo - 1, -1):
        for rest in _partitions(total - first, parts - 1, lo):
            if not rest or rest[0] <= first:
                yield [first] + rest


def _graph_candidates(family, edges):
    """Parameter dicts whose member has the given edge count (up to symmetry)."""
    half = edges // 2
    if family == "wheel":
        return [{"n": half}] if edges % 2 == 0 and half >= 3 else []
    if family == "mutant_wheel":
        return [{"n": (edges - 4) // 2}] if edges % 2 == 0 and edges >= 12 else []
    if family == "twisted_wheel":
        s = (edges - 6) // 2
        return [{"j": j, "k": s - j} for j in range(s + 1)] if edges % 2 == 0 and s >= 1 else []
    if family == "warped_wheel":
        s = (edges - 8) // 2
        return [{"j": j, "k": s - j} for j in range(1, s)] if edges % 2 == 0 else []
    if family == "multi_wheel":
        out = []
        for k in range(3, edges):
            rest = edges - 1 - k
            if rest < 0 or rest % 2:
                continue
            for br in _partitions(rest // 2, k, 0):
                out.append({"branches": br})
        return out
    if family == "stretched_wheel":
        return [{"n": n, "k": k} for n in range(3, edges) for k in range(1, edges)
                if 2 * n + 2 * k + 2 == edges]
    if family == "k3m":
        return [{"m": edges // 3}] if edges % 3 == 0 else []
    if family in ("k3m_prime", "k3m_doubleprime"):
        return [{"m": (edges - 6) // 3}] if edges % 3 == 0 and edges >= 12 else []
    return []


def is_family_graph(g, family):
    """Whether g is isomorphic to some member of a graph family."""
    import networkx as nx

    def as_nx(h):
        out = nx.MultiGraph()
        out.add_nodes_from(range(h.vertex_count))
        out.add_edges_from(h.edges)
        return out

    target = as_nx(g)
    for params in _graph_candidates(family, g.edge_count):
        try:
            cand = gen_graph(FamilySpec(family, params))
        except (ParameterError, ConstructionError):
            continue
        if cand.vertex_count == g.vertex_count and nx.is_isomorphic(target, as_nx(cand)):
            return True
    return False


# linear constructions

def _unit(dim, i, scale=1):
    v = [0] * dim
    v[i] = scale
    return v


def _add(*vs):
    return [sum(c) for c in zip(*vs)]


def _scale(a, v):
    return [a * x for x in v]


def _linear(cols, names, prime, kind, params):
    rep = LinearRepGFp.from_columns(prime, cols)
    m = from_gfp_matrix(rep, tuple(names), allow_large=True)
    m.provenance = Provenance(kind, rep, dict(params))
    return m


def free_spike(legs, tipped=False):
    """Free spike with the given number of legs over GF(p), p the least prime > legs + 1.

    Tipless: rank legs, x_i = e_i, y_i = e_i + w with w all-ones. With tipped
    the spike gains a tip x = c + w and a cotip y = c in one extra coordinate
    c, with y_i = e_i + x, so every leg plus {x, y} is a 4-element fan.
    """
    if legs < 3:
        raise ParameterError("free_spike: needs at least 3 legs")
    p = next_prime_above(legs + 1)
    if not tipped:
        w = [1] * legs
        cols, names = [], []
        for i in range(legs):
            cols += [_unit(legs, i), _add(_unit(legs, i), w)]
            names += [f"x{i + 1}", f"y{i + 1}"]
        return _linear(cols, names, p, "free-spike", {"legs": legs, "tipped": False})
    dim = legs + 1
    tip = [1] * dim
    cols, names = [], []
    for i in range(1, dim):
        cols += [_unit(dim, i), _add(_unit(dim, i), tip)]
        names += [f"x{i}", f"y{i}"]
    cols += [tip, _unit(dim, 0)]
    names += ["tip", "cotip"]
    return _linear(cols, names, p, "free-spike", {"legs": legs, "tipped": True})


# points of the four-point line, as (s, t) coefficients on coordinates 0 and 1
_LINE = {"x": (1, 0), "y": (0, 1), "z": (1, 1), "w": (1, 2)}
_X_TRIPLES = (("x", "y", "z"), ("x", "y", "w"), ("x", "z", "w"))


def line_paddle(m, hinged, prime=LINEAR_PRIME):
    """Copies of M(K4) glued along triples of a 4-point line; y, z, w then deleted.

    hinged copies go along {y, z, w}; the rest along triples through x. Each
    copy on a triple (a, b, c) with c = s*a + t*b contributes t*b - d, c - d
    and d for a fresh coordinate d.
    """
    dim = 2 + m
    pts = {k: [s, t] + [0] * m for k, (s, t) in _LINE.items()}
    triples = [("y", "z", "w")] * hinged + [_X_TRIPLES[i % 3] for i in range(m - hinged)]
    cols, names = [pts["x"]], ["x"]
    for i, (a, b, c) in enumerate(triples):
        va, vb, vc = pts[a], pts[b], pts[c]
        s, t = _solve_on_line(va, vb, vc, prime)
        d = _unit(dim, 2 + i)
        cols += [_add(_scale(t, vb), _scale(-1, d)), _add(vc, _scale(-1, d)), d]
        names += [f"p{i + 1}.{j}" for j in (1, 2, 3)]
    return cols, names


def _solve_on_line(va, vb, vc, p):
    # c = s*a + t*b using the first two coordinates
    det = (va[0] * vb[1] - va[1] * vb[0]) % p
    inv = pow(det, p - 2, p)
    s = ((vc[0] * vb[1] - vc[1] * vb[0]) * inv) % p
    t = ((va[0] * vc[1] - va[1] * vc[0]) * inv) % p
    return s, t


def hinged_triad_paddle(m, hinged=1):
    if m < 3:
        raise ParameterError("hinged_triad_paddle: needs m >= 3")
    if not 1 <= hinged <= m:
        raise ParameterError("hinged_triad_paddle: needs 1 <= hinged <= m")
    cols, names = line_paddle(m, hinged)
    return _linear(cols, names, LINEAR_PRIME, "hinged-triad-paddle", {"m": m, "hinged": hinged})


def even_fan_paddle_line(m):
    if m < 3:
        raise ParameterError("even_fan_paddle: needs m >= 3")
    cols, names = line_paddle(m, 0)
    return _linear(cols, names, LINEAR_PRIME, "even-fan-paddle", {"m": m})


def whirl(r):
    """Relax the rim of M(W_r); the rim is a circuit-hyperplane."""
    wheel = from_graph(_wheel(FamilySpec("wheel", {"n": r})))
    rim = sum(1 << e for e in range(r, 2 * r))
    return relax(wheel, rim)


def _k3m_vectors(k, dim):
    """Signed incidence columns of K_{3,k}: edge u_a v_i -> u_a - v_i."""
    cols, names = [], []
    for i in range(k):
        for a in range(3):
            cols.append(_add(_unit(dim, a), _unit(dim, 3 + i, -1)))
            names.append(f"p{i + 1}.{a + 1}")
    return cols, names


def quasi_quad(k, near=False, alpha=1, beta=2, gamma=3):
    """K_{3,k} plus a quad (or near-quad) petal in one new coordinate d."""
    if k < 2:
        raise ParameterError("quasi_triad_paddle: needs at least 2 triads")
    dim = 3 + k + 1
    cols, names = _k3m_vectors(k, dim)
    d = _unit(dim, dim - 1)
    l1 = _add(_unit(dim, 0), _unit(dim, 1, -1))
    l2 = _add(_unit(dim, 1), _unit(dim, 2, -1))
    if near:
        extra = [d, _add(d, _scale(alpha, l1)), _add(d, _scale(gamma, l1)), _add(d, _scale(-alpha, l2))]
        tags = ["q.t1", "q.t2", "q.t3", "q.x"]
    else:
        extra = [d, _add(d, _scale(alpha, l1)), _add(d, _scale(beta, l2)),
                 _add(d, _scale(alpha, l1), _scale(beta, l2))]
        tags = ["q.1", "q.2", "q.3", "q.4"]
    kind = "near_quad" if near else "quad"
    return _linear(cols + extra, names + tags, LINEAR_PRIME, "quasi-triad-paddle",
                   {"petal": kind, "k": k})


def tri_paddle_copaddle(s, t):
    """Triads of K_{3,s} on one side, t triangles r_i (x) c_a on the other.

    The triangles live in F^t (x) F^2 with r_i = b_i for i < t and r_t the
    all-ones vector; b_0 (x) c_1 and b_0 (x) c_2 are identified with
    u1 - u2 and u2 - u3 of the K_{3,s} part.
    """
    if s < 2 or t < 2:
        raise ParameterError("tri_paddle_copaddle: needs s, t >= 2")
    base = 3 + s
    dim = base + 2 * (t - 1)
    cols, names = _k3m_vectors(s, dim)
    l1 = _add(_unit(dim, 0), _unit(dim, 1, -1))
    l2 = _add(_unit(dim, 1), _unit(dim, 2, -1))

    def tensor(j, c):  # b_j (x) c_c
        if j == 0:
            return l1 if c == 0 else l2
        return _unit(dim, base + 2 * (j - 1) + c)

    for i in range(1, t + 1):
        rows = [i] if i < t else list(range(t))
        c1 = _add(*[tensor(j, 0) for j in rows])
        c2 = _add(*[tensor(j, 1) for j in rows])
        cols += [c1, c2, _add(c1, c2)]
        names += [f"q{i}.1", f"q{i}.2", f"q{i}.3"]
    return _linear(cols, names, LINEAR_PRIME, "tri-paddle-copaddle", {"s": s, "t": t})


def parse_key(key):
    """Inverse of FamilySpec.key for integer, boolean-as-int, text and list values."""
    if key == "default":
        return {}
    params = {}
    for part in key.split(","):
        name, _, text = part.partition("=")
        vals = text.split("-")
        conv = [int(v) if v.lstrip("-").isdigit() else v for v in vals]
        if len(conv) > 1:
            params[name] = conv
        elif name == "tipped":
            params[name] = bool(conv[0])
        else:
            params[name] = conv[0]
    return params


def load_fixture(family, key, validate=True):
    """Read a stored member; it must pass its recognizer and have no detachable pair."""
    from . import io
    from .detach import find_detachable_pairs

    path = resources.files("detpairs").joinpath("fixtures", family, f"{key}.matroid")
    if not path.is_file():
        raise UnsupportedParametersError(
            f"no fixture for {family} with {key}; run the fixture search to create one")
    m = io.read_matroid(path.read_text(), allow_large=True)
    if validate:
        spec = FamilySpec(family, parse_key(key))
        validate_member(m, expected_outcomes(spec), spec)
        if find_detachable_pairs(m, "first"):
            raise ConstructionError(f"fixture {family}/{key} has a detachable pair", key)
    return m


def _fixture_key(spec):
    keep = {k: v for k, v in spec.params.items()
            if k not in ("dualize", "fixture") and not (k == "tipped" and not v)}
    return FamilySpec(spec.family, keep).key()


def available_fixtures(family):
    root = resources.files("detpairs").joinpath("fixtures", family)
    if not root.is_dir():
        return []
    return sorted(p.name[: -len(".matroid")] for p in root.iterdir() if p.name.endswith(".matroid"))


def _even_fan_spike(spec):
    if spec.get("graph"):
        gf = spec.get("graph")
        if gf not in ("twisted_wheel", "warped_wheel"):
            raise ParameterError("even_fan_spike: graph must be twisted_wheel or warped_wheel")
        return from_graph(gen_graph(FamilySpec(gf, {"j": spec.get("j"), "k": spec.get("k")})))
    if spec.get("petals") is None and spec.get("legs") is not None:
        return free_spike(_need_int(spec, "legs", 3, "a spike has at least 3 legs"),
                          bool(spec.get("tipped", False)))
    return load_fixture("even_fan_spike", _fixture_key(spec))


def _quasi(spec):
    kind = spec.get("petal")
    k = _need_int(spec, "k", 2, "the triad-paddle part needs at least 2 triads")
    if kind == "augmented":
        return from_graph(gen_graph(FamilySpec("k3m_doubleprime", {"m": k})))
    if kind == "co_augmented":
        return from_graph(gen_graph(FamilySpec("k3m_prime", {"m": k})))
    if kind in ("quad", "near_quad"):
        return quasi_quad(k, near=kind == "near_quad")
    raise ParameterError(f"quasi_triad_paddle: petal must be one of {PETAL_KINDS}")


def _even_fan_paddle(spec):
    if spec.get("branches") is not None:
        return from_graph(gen_graph(FamilySpec("multi_wheel", {"branches": spec.get("branches")})))
    return even_fan_paddle_line(_need_int(spec, "m", 3, "a paddle has m >= 3 petals"))


_MATROID_GENERATORS = {
    "whirl": lambda s: whirl(_need_int(s, "r", 3, "a whirl has rank >= 3")),
    "free_spike": lambda s: free_spike(_need_int(s, "legs", 3, "a spike has at least 3 legs"),
                                       bool(s.get("tipped", False))),
    "hinged_triad_paddle": lambda s: hinged_triad_paddle(_need_int(s, "m", 3, "m >= 3"), s.get("hinged", 1)),
    "even_fan_spike": _even_fan_spike,
    "even_fan_paddle": _even_fan_paddle,
    "quasi_triad_paddle": _quasi,
    "tri_paddle_copaddle": lambda s: tri_paddle_copaddle(_need_int(s, "s", 2, "s >= 2"),
                                                         _need_int(s, "t", 2, "t >= 2")),
    "accordion": lambda s: from_graph(_mutant_wheel(FamilySpec("mutant_wheel", {"n": s.get("n")}))),
}


def expected_outcomes(spec):
    """Classification tags a generated member may carry (before dualizing)."""
    f = spec.family
    table = {
        "wheel": {"wheel"}, "whirl": {"whirl"}, "mutant_wheel": {"accordion"},
        "accordion": {"accordion"}, "twisted_wheel": {"even_fan_spike_tip_cotip"},
        "warped_wheel": {"even_fan_spike"}, "multi_wheel": {"even_fan_paddle"},
        "stretched_wheel": {"even_fan_paddle_dual"}, "k3m": {"triad_paddle"},
        "k3m_prime": {"quasi_triad_paddle(co_augmented)"},
        "k3m_doubleprime": {"quasi_triad_paddle(augmented)"},
        "hinged_triad_paddle": {"hinged_triad_paddle"}, "even_fan_paddle": {"even_fan_paddle"},
        "tri_paddle_copaddle": {"tri_paddle_copaddle"},
    }
    if f == "free_spike" or f == "even_fan_spike":
        tipped = spec.get("tipped") or spec.get("graph") == "twisted_wheel"
        return {"even_fan_spike_tip_cotip"} if tipped else {"even_fan_spike"}
    if f == "quasi_triad_paddle":
        return {f"quasi_triad_paddle({spec.get('petal')})"}
    return table[f]


def dual_tag(tag):
    """Outcome tag of M* given the tag of M."""
    if tag.endswith("_dual"):
        return tag[: -len("_dual")]
    if "(" in tag:
        head, rest = tag.split("(", 1)
        if head.endswith("_dual"):
            return f"{head[: -len('_dual')]}({rest}"
        return f"{head}_dual({rest}"
    if tag in ("detachable_pair", "even_fan_spike", "even_fan_spike_tip_cotip", "accordion",
               "tri_paddle_copaddle", "unclassified", "wheel", "whirl"):
        return tag
    return f"{tag}_dual"


def gen_matroid(spec, validate=True):
    f = spec.family
    if spec.get("fixture"):
        m = load_fixture(f, _fixture_key(spec))
    elif f in _GRAPH_FAMILIES_SET:
        m = from_graph(gen_graph(spec), allow_large=True)
    elif f in _MATROID_GENERATORS:
        m = _MATROID_GENERATORS[f](spec)
    else:
        raise ParameterError(f"unknown family {f!r}")
    expected = expected_outcomes(spec)
    if spec.get("dualize"):
        m = m.dual()
        expected = {dual_tag(t) for t in expected}
    if validate:
        validate_member(m, expected, spec)
    return m


def validate_member(m, expected, spec=None):
    from .connectivity import is_3connected
    from .recognizers import recognize_tag

    if not is_3connected(m):
        raise ConstructionError(f"{spec.family if spec else 'member'} is not 3-connected", None)
    for tag in sorted(expected):
        cert = recognize_tag(m, tag)
        if cert is None:
            raise ConstructionError(f"recognizer rejects {tag} for {spec.key() if spec else ''}", tag)
    return True
