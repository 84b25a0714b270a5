"""Command-line entry point: detpairs <subcommand> [flags]."""
import argparse
import json
import sys
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from . import families as fam
from . import harness
from .bits import elements, mask_of, popcounts
from .connectivity import is_3connected
from .detach import find_detachable_pairs
from .errors import ArgumentError, DetpairsError
from .gfp import LinearRepGFp, contract_column, delete_columns, dual_rep, incidence_rep
from .graphs import Graph, contract_edges, delete_edges
from .io import (graph6_decode, graph6_encode, read_graph, read_matroid, to_jsonable,
                 write_graph, write_matroid, write_report)
from .matroid import _view, from_gfp_matrix, from_graph, Matroid, Provenance
from .recognizers import classify_graph, classify_matroid
from .structures import maximal_fans, small_dependents

SUBCOMMANDS = ("gen", "analyze", "pairs", "classify", "dual", "minor", "verify", "convert")
MATROID_FORMATS = ("graph", "gfp", "bases", "graph6")
FAMILY_PARAMS = ("n", "m", "j", "k", "r", "s", "t", "legs", "hinged", "petal", "petals",
                 "branches", "graph", "tipped", "fixture")
LIST_PARAMS = ("petals", "branches")
BOOL_PARAMS = ("tipped", "fixture")


class UsageError(DetpairsError):
    pass


@dataclass
class CliConfig:
    subcommand: str
    input_path: str = None
    family: fam.FamilySpec = None
    output_path: str = None
    mode: str = "first"
    dualize: bool = False
    workers: int = 1
    allow_large: bool = False
    seed: int = 0
    options: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.subcommand not in SUBCOMMANDS:
            raise UsageError(f"unknown subcommand {self.subcommand!r}")
        sources = (self.input_path is not None) + (self.family is not None)
        if self.subcommand == "verify":
            if sources:
                raise UsageError("verify builds its own corpus; drop --in/--family")
        elif sources != 1:
            raise UsageError("give exactly one input source (--in or --family)")
        if self.workers < 1:
            raise UsageError("--workers must be at least 1")


# argument parsing

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _int_list(text):
    try:
        return [int(x) for x in text.replace("-", ",").split(",") if x != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected integers, got {text!r}") from None


def _pair(text):
    vals = _int_list(text)
    if len(vals) != 2:
        raise argparse.ArgumentTypeError(f"expected LO,HI, got {text!r}")
    return tuple(vals)


def _common(p):
    p.add_argument("--in", dest="input_path", help='input file, or "-" for stdin')
    p.add_argument("--out", dest="output_path", help="output file (default stdout)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--allow-large", action="store_true", help="raise the element cap to 24")


def build_parser():
    p = _Parser(prog="detpairs", description="Detachable pairs in 3-connected matroids and graphs.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="emit a family member")
    _common(g)
    g.add_argument("--family", required=True, choices=fam.FAMILIES)
    for name in FAMILY_PARAMS:
        if name in BOOL_PARAMS:
            g.add_argument(f"--{name}", action="store_true", default=None)
        elif name in LIST_PARAMS:
            g.add_argument(f"--{name}", type=_int_list)
        elif name in ("petal", "graph"):
            g.add_argument(f"--{name}")
        else:
            g.add_argument(f"--{name}", type=int)
    g.add_argument("--dualize", action="store_true")
    g.add_argument("--format", choices=MATROID_FORMATS)

    a = sub.add_parser("analyze", help="fans, small circuits and cocircuits, lambda profile")
    _common(a)

    pr = sub.add_parser("pairs", help="detachable pair search")
    _common(pr)
    pr.add_argument("--mode", choices=("first", "all"), default="first")

    c = sub.add_parser("classify", help="classification report")
    _common(c)
    c.add_argument("--exhaustive", action="store_true", help="report every matching outcome")

    d = sub.add_parser("dual", help="dual matroid")
    _common(d)
    d.add_argument("--format", choices=MATROID_FORMATS[:3])

    mi = sub.add_parser("minor", help="delete and contract elements")
    _common(mi)
    mi.add_argument("--delete", type=_int_list, default=[])
    mi.add_argument("--contract", type=_int_list, default=[])
    mi.add_argument("--format", choices=MATROID_FORMATS)

    cv = sub.add_parser("convert", help="transcode between formats")
    _common(cv)
    cv.add_argument("--format", choices=MATROID_FORMATS, required=True)

    v = sub.add_parser("verify", help="run the verification harness")
    _common(v)
    v.add_argument("--sweep-range", type=_pair, default=(harness.MIN_EDGES, 18))
    v.add_argument("--random-count", type=int, default=300)
    v.add_argument("--random-edges", type=_pair, default=(13, 16))
    v.add_argument("--no-duals", action="store_true")
    v.add_argument("--no-fixtures", action="store_true")
    v.add_argument("--no-sweep", action="store_true")
    v.add_argument("--catalog", action="append", default=[], help="graph6 catalog (repeatable)")
    v.add_argument("--catalog-limit", type=int)
    v.add_argument("--suites", help="comma-separated subset of: " + ",".join(harness.SUITES))
    v.add_argument("--minor-samples", type=int, default=30)
    v.add_argument("--timing", action="store_true", help="record wall-clock timings (not reproducible)")
    v.add_argument("--report-format", choices=("json", "csv"), default="json")
    v.add_argument("--summary-only", action="store_true")
    return p


def parse_config(argv):
    ns = build_parser().parse_args(argv)
    spec = None
    opts = {k: v for k, v in vars(ns).items()
            if k not in ("subcommand", "input_path", "output_path", "seed", "workers", "allow_large")}
    if ns.subcommand == "gen":
        params = {k: opts.pop(k) for k in FAMILY_PARAMS if opts.get(k) is not None}
        opts.pop("family")
        for k in FAMILY_PARAMS:
            opts.pop(k, None)
        spec = fam.FamilySpec(ns.family, params)
    return CliConfig(ns.subcommand, ns.input_path, spec, ns.output_path, opts.pop("mode", "first"),
                     bool(opts.pop("dualize", False)), ns.workers, ns.allow_large, ns.seed, opts)


# input

@dataclass
class Loaded:
    label: str
    matroid: Matroid
    graph: Graph = None


def _read_text(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="ascii") as fh:
        return fh.read()


def _first_token(text):
    for line in text.splitlines():
        s = line.split("#", 1)[0].strip()
        if s:
            return s.split()[0]
    return None


def load_inputs(cfg):
    """Instances named by --in: one matroid document, or one graph per graph6 line."""
    text = _read_text(cfg.input_path)
    head = _first_token(text)
    if head is None:
        raise ArgumentError("input is empty")
    if head == "graph":
        g = read_graph(text)
        return [Loaded("0", from_graph(g, allow_large=cfg.allow_large), g)]
    if head in ("gfp", "bases"):
        return [Loaded("0", read_matroid(text, allow_large=cfg.allow_large))]
    out = []
    for no, line in enumerate(text.splitlines()):
        if line.strip():
            g = graph6_decode(line.strip())
            out.append(Loaded(str(no), from_graph(g, allow_large=cfg.allow_large), g))
    return out


def _single(items, what):
    if len(items) != 1:
        raise ArgumentError(f"{what} takes a single instance, input has {len(items)}")
    return items[0]


# output helpers

def _encode(m, g, fmt):
    """Text for m in fmt; graph formats need the graph g."""
    if fmt == "graph6":
        if g is None:
            raise ArgumentError("graph6 output needs a graphic input")
        return graph6_encode(g) + "\n"
    if fmt == "graph":
        if g is None:
            raise ArgumentError("graph output needs a graphic input")
        return write_graph(g)
    if fmt == "gfp" and g is not None and m.provenance.kind == "graphic":
        return write_matroid(from_gfp_matrix(incidence_rep(g.vertex_count, g.edges)), "gfp")
    return write_matroid(m, fmt)


def _names(m, mask):
    return [m.name(e) for e in elements(mask)]


def _dumps(obj):
    return json.dumps(to_jsonable(obj), indent=1, sort_keys=True) + "\n"


# subcommands

def cmd_gen(cfg):
    spec = cfg.family
    if cfg.dualize:
        spec = fam.FamilySpec(spec.family, {**spec.params, "dualize": True})
    fmt = cfg.options.get("format")
    graphic = spec.family in fam.GRAPH_FAMILIES and not cfg.dualize and not spec.get("fixture")
    if graphic:
        g = fam.gen_graph(spec)
        return _encode(from_graph(g, allow_large=True), g, fmt or "graph"), 0
    if fmt in ("graph", "graph6"):
        raise ArgumentError(f"{spec.family} output has no graph form; use gfp or bases")
    return write_matroid(fam.gen_matroid(spec), fmt), 0


def analyze_one(m):
    tbl = m.lam_table
    pc = popcounts(m.n)
    profile = []
    for k in range(m.n + 1):
        profile.append(int(tbl[pc == k].min()))
    values, counts = np.unique(tbl, return_counts=True)
    small = {kind: sorted((_names(m, s.mask) for s in small_dependents(m, kind, 4)), key=lambda x: (len(x), x))
             for kind in ("circuit", "cocircuit")}
    return {
        "elements": m.n,
        "rank": m.r,
        "names": [m.name(e) for e in range(m.n)],
        "three_connected": is_3connected(m),
        "circuits_upto_4": small["circuit"],
        "cocircuits_upto_4": small["cocircuit"],
        "maximal_fans": [{"ordering": [m.name(e) for e in f.ordering], "start": f.start_kind,
                          "cyclic": f.wheel} for f in maximal_fans(m)],
        "lambda_by_size": profile,
        "lambda_counts": {str(int(v)): int(c) for v, c in zip(values, counts)},
    }


def cmd_analyze(cfg):
    out = [{"instance": it.label, **analyze_one(it.matroid)} for it in load_inputs(cfg)]
    return _dumps(out if len(out) > 1 else out[0]), 0


def cmd_pairs(cfg):
    items = load_inputs(cfg)
    lines = []
    for it in items:
        if len(items) > 1:
            lines.append(f"# {it.label}")
        found = find_detachable_pairs(it.matroid, cfg.mode)
        if not found:
            lines.append("none")
        for v in found:
            how = " ".join(w for w, ok in (("delete", v.delete_ok), ("contract", v.contract_ok)) if ok)
            lines.append(f"{v.e} {v.f} {how}")
    return "\n".join(lines) + "\n", 0


def classify_one(it, exhaustive):
    if it.graph is not None:
        c = classify_graph(it.graph, exhaustive=exhaustive)
    else:
        c = classify_matroid(it.matroid, exhaustive=exhaustive)
    return {
        "instance": it.label,
        "elements": it.matroid.n,
        "outcome": c.outcome,
        "witness": c.witness,
        "matches": [t for t, _ in c.matches],
        "items": list(c.items),
        "explained_overlap": list(c.subsumed),
        "exclusive": c.exclusive,
    }


def cmd_classify(cfg):
    out = [classify_one(it, cfg.options.get("exhaustive", False)) for it in load_inputs(cfg)]
    return _dumps(out if len(out) > 1 else out[0]), 0


def cmd_dual(cfg):
    it = _single(load_inputs(cfg), "dual")
    m = it.matroid
    fmt = cfg.options.get("format")
    rep = None
    if it.graph is not None:
        rep = incidence_rep(it.graph.vertex_count, it.graph.edges)
    elif isinstance(m.provenance.source, LinearRepGFp):
        rep = m.provenance.source
    if rep is not None and fmt in (None, "gfp"):
        d = from_gfp_matrix(dual_rep(rep), allow_large=True)
        if not np.array_equal(d.ranks, m.dual_ranks):
            raise DetpairsError("dual representation does not match the dual rank table")
        return write_matroid(d, "gfp"), 0
    return write_matroid(m.dual(), fmt or "bases"), 0


def _minor_parts(m, it, dele, con):
    n = m.n
    for e in dele + con:
        if not 0 <= e < n:
            raise ArgumentError(f"element {e} outside ground set of size {n}")
    if set(dele) & set(con) or len(set(dele)) != len(dele) or len(set(con)) != len(con):
        raise ArgumentError("deleted and contracted elements must be distinct")
    dmask, cmask = mask_of(dele), mask_of(con)
    if (dmask | cmask) == m.full:
        raise ArgumentError("minor would remove every element")
    ranks = _view(m.ranks, n, dmask, cmask)
    keep = [e for e in range(n) if not (dmask | cmask) >> e & 1]
    names = tuple(m.names[e] for e in keep) if m.names else None
    g = None
    if it.graph is not None:
        after = [e for e in range(n) if e not in set(dele)]
        g = contract_edges(delete_edges(it.graph, dele), [after.index(e) for e in con])
        prov = Provenance("graphic", g)
    elif isinstance(m.provenance.source, LinearRepGFp) and m.provenance.source.ncols == n:
        rep = delete_columns(m.provenance.source, dele)
        after = [e for e in range(n) if e not in set(dele)]
        for j in sorted((after.index(e) for e in con), reverse=True):
            rep = contract_column(rep, j)
        prov = Provenance("linear-gfp", rep)
    else:
        prov = Provenance("minor-of", m, {"deleted": dmask, "contracted": cmask})
    return Matroid(ranks, names, prov, allow_large=True), g


def cmd_minor(cfg):
    it = _single(load_inputs(cfg), "minor")
    m, g = _minor_parts(it.matroid, it, cfg.options["delete"], cfg.options["contract"])
    fmt = cfg.options.get("format")
    if fmt is None:
        fmt = "graph" if g is not None else "gfp" if m.provenance.kind == "linear-gfp" else "bases"
    return _encode(m, g, fmt), 0


def cmd_convert(cfg):
    items = load_inputs(cfg)
    fmt = cfg.options["format"]
    if fmt == "graph6":
        return "".join(_encode(it.matroid, it.graph, fmt) for it in items), 0
    it = _single(items, "convert to a matroid format")
    return _encode(it.matroid, it.graph, fmt), 0


def corpus_config(cfg):
    o = cfg.options
    suites = frozenset(harness.SUITES)
    if o.get("suites"):
        suites = frozenset(s.strip() for s in o["suites"].split(",") if s.strip())
    return harness.CorpusConfig(
        sweeps=() if o.get("no_sweep") else None,
        sweep_range=o["sweep_range"],
        include_duals=not o["no_duals"],
        include_fixtures=not o["no_fixtures"],
        random_count=o["random_count"],
        random_edges=o["random_edges"],
        seed=cfg.seed,
        catalogs=tuple(o["catalog"]),
        catalog_limit=o["catalog_limit"],
        suites=suites,
        minor_samples=o["minor_samples"],
        timing=o["timing"],
    )


def cmd_verify(cfg):
    ccfg = corpus_config(cfg)
    corpus = harness.build_corpus(ccfg)
    report = harness.verify_theorems(corpus, ccfg, workers=cfg.workers)
    summary = json.dumps(report.summary, indent=1, sort_keys=True) + "\n"
    if cfg.options["summary_only"]:
        text = summary
    else:
        text = write_report(report.records, cfg.options["report_format"])
        sys.stderr.write(summary)
    return text, 1 if report.summary["counterexamples"] else 0


COMMANDS = {"gen": cmd_gen, "analyze": cmd_analyze, "pairs": cmd_pairs, "classify": cmd_classify,
            "dual": cmd_dual, "minor": cmd_minor, "convert": cmd_convert, "verify": cmd_verify}


def run_cli(argv, stdout=None, stderr=None):
    """Run one command; returns the exit status (0 ok, 1 findings, 2 usage or input error)."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        cfg = parse_config(list(argv))
        text, status = COMMANDS[cfg.subcommand](cfg)
    except SystemExit as exc:  # --help and --version
        return int(exc.code or 0)
    except UsageError as exc:
        stderr.write(f"usage error: {exc}\n")
        return 2
    except (DetpairsError, OSError, UnicodeDecodeError) as exc:
        stderr.write(f"error: {exc}\n")
        return 2
    if cfg.output_path:
        with open(cfg.output_path, "w", encoding="ascii") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return status


def main(argv=None):
    return run_cli(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
