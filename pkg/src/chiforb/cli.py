"""Command-line interface: ``chiforb <command> ...``.

Exit codes: 0 success (or every check holds), 1 a violation or a search hit,
2 usage errors and inputs outside the requested class.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import coloring, digraph, generators, patterns, verify
from .digraph import OrientedGraph
from .errors import ChiForbError, NotInClass, StructureViolation, OddCycleFound
from .search import SearchJob, cmd_search  # noqa: F401  (re-exported)

log = logging.getLogger("chiforb")

EXIT_OK, EXIT_HIT, EXIT_USAGE = 0, 1, 2

FLAG_PATTERNS = ["tt3", "c3", "p3+", "p21+", "p21-", "p111+", "c31", "c22", "s1-1"]


class UsageError(Exception):
    pass


def _dump(obj, path: str | None = None) -> None:
    text = json.dumps(obj, sort_keys=True)
    if path and path != "-":
        Path(path).write_text(text + "\n")
    else:
        print(text)


def _load(path: str) -> OrientedGraph:
    if path == "-":
        return OrientedGraph.from_json(sys.stdin.read())
    return digraph.load(path)


def _table(rows: list[dict], columns: list[str]) -> str:
    widths = {c: max(len(c), *(len(str(r.get(c, ""))) for r in rows)) if rows else len(c) for c in columns}
    lines = ["  ".join(c.rjust(widths[c]) for c in columns)]
    for r in rows:
        lines.append("  ".join(str(r.get(c, "")).rjust(widths[c]) for c in columns))
    return "\n".join(lines)


# -- gen ---------------------------------------------------------------------------

def _spec_from_args(args, kind: str) -> generators.GenSpec:
    blocks = [int(x) for x in args.blocks.split(",")] if args.blocks else None
    forbid = args.forbid.split(",") if args.forbid else []
    spec = generators.GenSpec(
        kind=kind, n=args.n, k=args.k, l=args.l, p=args.p, seed=args.seed,
        blocks=blocks, sign=args.sign, forbid=forbid, max_tries=args.max_tries,
    )
    if kind == "line":
        if not args.of:
            raise UsageError("gen line needs --of KIND")
        base = _spec_from_args(args, args.of)
        for _ in range(args.iterate - 1):
            base = generators.GenSpec(kind="line", base=base)
        spec = generators.GenSpec(kind="line", base=base)
    return spec


def cmd_gen(args) -> int:
    spec = _spec_from_args(args, args.kind)
    g = generators.generate(spec)
    if args.json or args.output:
        _dump(g.to_dict(), args.output)
    else:
        print(f"{args.kind}: {g.n} vertices, {g.m} arcs")
        print(g.to_json())
    return EXIT_OK


# -- detect ------------------------------------------------------------------------

def cmd_detect(args) -> int:
    g = _load(args.file)
    kinds = patterns.parse_patterns(args.patterns)
    rows = []
    for kind in kinds:
        emb = patterns.find_induced(g, kind)
        rows.append({"pattern": kind.name, "present": emb is not None,
                     "embedding": list(emb.map) if emb else None})
    if args.json:
        _dump({"free": not any(r["present"] for r in rows), "patterns": rows})
    else:
        print(_table([{**r, "embedding": r["embedding"] or "-"} for r in rows],
                     ["pattern", "present", "embedding"]))
    return EXIT_OK


# -- chi / tri ---------------------------------------------------------------------

def cmd_chi(args) -> int:
    g = _load(args.file)
    stats: dict = {}
    chi, col = coloring.chi_exact(g, stats)
    out = {"chi": chi, "coloring": col.to_dict(), "search": stats}
    if args.json or args.output:
        _dump(out, args.output)
    else:
        print(f"chi = {chi}  (clique bound {stats.get('lower_bound')}, greedy {stats.get('greedy')}, "
              f"{stats.get('nodes')} search nodes)")
        print("colors:", " ".join(map(str, col.colors)))
    return EXIT_OK


def cmd_tri(args) -> int:
    g = _load(args.file)
    tri, col = coloring.tri_exact(g, "directed" if args.directed else "underlying")
    out = {"tri": tri, "coloring": col.to_dict()}
    if args.json or args.output:
        _dump(out, args.output)
    else:
        print(f"tri = {tri}")
        print("colors:", " ".join(map(str, col.colors)))
    return EXIT_OK


# -- color -------------------------------------------------------------------------

def _auto_method(g: OrientedGraph) -> str:
    if all(g.out_degree(v) <= 1 for v in range(g.n)):
        return "out-star"
    if g.n and digraph.is_connected(g) and patterns.is_f_free(g, [patterns.TT3, patterns.S11])[0]:
        return "s11"
    if patterns.is_f_free(g, [patterns.C3, patterns.TT3, patterns.PPLUS21])[0]:
        return "c3tt3p21"
    if patterns.is_f_free(g, [patterns.TT3, patterns.PPLUS21])[0]:
        return "tt3p21"
    return "bip"


METHODS = {
    "out-star": coloring.color_out_star_free,
    "s11": coloring.color_s11,
    "c3tt3p21": coloring.color_c3_tt3_p21,
    "tt3p21": coloring.color_tt3_p21,
    "bip": coloring.color_bipartite_no_odd_cycle,
}


def cmd_color(args) -> int:
    g = _load(args.file)
    method = _auto_method(g) if args.method == "auto" else args.method
    try:
        col = METHODS[method](g)
    except StructureViolation as exc:
        _dump({"method": method, "structure_violation": exc.to_dict()}, args.output)
        return EXIT_HIT
    out = {"method": method, **col.to_dict()}
    if args.json or args.output:
        _dump(out, args.output)
    else:
        print(f"{method}: {col.num_colors} colours")
        print("colors:", " ".join(map(str, col.colors)))
    return EXIT_OK


# -- verify ------------------------------------------------------------------------

SUITES = ("erdos-moser", "nbr", "comb", "oddhole", "tchi", "star-triangle", "s11", "tree", "ppk1",
          "p4-pair", "critical", "tri-critical")


def _parse_corpus(text: str):
    try:
        n, p, count, seed = text.split(",")
        return int(n), float(Fraction(p)), int(count), int(seed)
    except ValueError:
        raise UsageError("--corpus expects n,p,count,seed") from None


def _suite_forbid(args) -> list:
    k, l = args.k, args.l if args.l is not None else args.k
    skk = patterns.PatternKind.star(k, k)
    return {
        "nbr": [patterns.TT3, skk],
        "tchi": [patterns.TT3, skk],
        "ppk1": [patterns.TT3, skk],
        "star-triangle": [patterns.C3, patterns.TT3, patterns.PatternKind.star(k, l)],
        "s11": [patterns.TT3, patterns.S11],
        "oddhole": [patterns.TT3, patterns.PPLUS21],
        "p4-pair": [patterns.PPLUS3, patterns.PPLUS21],
        "tri-critical": [patterns.TT3],
        "critical": [],
    }[args.suite]


def _instance_check(args, g: OrientedGraph) -> list[verify.CheckReport]:
    s = args.suite
    k = args.k
    l = args.l if args.l is not None else k
    if s == "erdos-moser":
        return [verify.check_erdos_moser(g)]
    if s == "nbr":
        return [verify.check_nbr_lemma(g, k)]
    if s == "oddhole":
        return [verify.check_odd_hole_lemmas(g)]
    if s == "tchi":
        return [verify.check_tchi_bound(g, k)]
    if s == "star-triangle":
        return [verify.check_star_triangle_bound(g, k, l)]
    if s == "s11":
        return [verify.check_s11_structure(g)]
    if s == "p4-pair":
        return [verify.check_p4_pair(g)]
    if s == "critical":
        return [verify.check_critical(g)]
    if s == "tri-critical":
        return [verify.check_tri_critical(g)]
    if s == "ppk1":
        # default tau halfway between s = 1 - 1/(2k) and 1
        tau = Fraction(args.tau) if args.tau else 1 - Fraction(1, 4 * k)
        reports = [verify.check_ppk1(g, A, B, C, tau, k) for A, B, C in verify.ppk1_triples(g, tau, k)]
        if not reports:
            reports = [verify.CheckReport("ppk1", verify.fingerprint(g), verify.VACUOUS, None,
                                          {"reason": "no triple meets the degree hypotheses"})]
        return reports
    raise UsageError(f"suite {s} does not take a graph")


def _largest_component(g: OrientedGraph) -> OrientedGraph:
    comps = digraph.weak_components(g)
    if len(comps) <= 1:
        return g
    best = max(comps, key=lambda c: (len(c), [-v for v in c]))
    return g.induced(best)[0]


def _corpus_instances(args):
    n, p, count, seed = _parse_corpus(args.corpus)
    rng = generators.SplitMix64(seed)
    s = args.suite
    for i in range(count):
        sub = rng.next_u64()
        size = 2 + (i % max(1, n - 1))
        if s == "erdos-moser":
            yield generators.random_tournament(size, sub)
        elif s == "comb":
            yield verify.random_comb_family(size, args.k, _hyper_p(args), sub)
        elif s == "tree":
            yield _random_tree(min(size, verify.TREE_EDGE_CAP + 1), sub)
        elif s == "oddhole":
            # half the instances grow around a directed odd hole or the 10-vertex gadget
            bases = [None, generators.directed_cycle(5), generators.directed_cycle(7),
                     generators.two_pentagon_gadget()]
            base = bases[i % 4]
            size = max(size, base.n + i % 5 if base else 0)
            yield generators.grow_f_free(size, p, sub, _suite_forbid(args), args.max_tries, base=base)
        else:
            forbid = _suite_forbid(args)
            sampler = generators.grow_f_free if i % 2 else generators.random_f_free
            g = sampler(size, p, sub, forbid, args.max_tries)
            yield _largest_component(g) if s == "s11" else g


def _random_tree(n: int, seed: int) -> tuple[int, list]:
    rng = generators.SplitMix64(seed)
    return n, [(rng.below(v), v) for v in range(1, n)]


def _hyper_p(args) -> Fraction:
    return Fraction(args.p) if args.p else Fraction(1, 2)


def cmd_verify(args) -> int:
    if args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite}")
    if args.corpus and args.file:
        raise UsageError("give either a file or --corpus, not both")
    if not args.corpus and not args.file and args.suite != "tree":
        raise UsageError("verify needs a file or --corpus")
    reports: list[verify.CheckReport] = []
    if args.suite == "tree" and not args.corpus and not args.file:
        reports.append(verify.check_tree_all_orientations(*verify.spider8()))
    elif args.corpus:
        for inst in _corpus_instances(args):
            if args.suite == "comb":
                reports.append(verify.check_comb_lemma(inst, args.k, _hyper_p(args)))
            elif args.suite == "tree":
                reports.append(verify.check_tree_all_orientations(*inst))
            else:
                reports.extend(_instance_check(args, inst))
    else:
        data = json.loads(Path(args.file).read_text()) if args.file != "-" else json.load(sys.stdin)
        if args.suite == "comb":
            h = verify.Hypergraph.make(data["n"], data["edges"])
            reports.append(verify.check_comb_lemma(h, args.k, _hyper_p(args)))
        elif args.suite == "tree":
            edges = data.get("edges", data.get("arcs"))
            reports.append(verify.check_tree_all_orientations(data["n"], edges))
        else:
            reports.extend(_instance_check(args, OrientedGraph.from_dict(data)))
    for r in reports:
        print(r.to_json())
    if not args.json:
        tally: dict[str, int] = {}
        for r in reports:
            tally[r.verdict] = tally.get(r.verdict, 0) + 1
        print("# " + ", ".join(f"{v}: {c}" for v, c in sorted(tally.items())), file=sys.stderr)
    return EXIT_HIT if any(r.verdict == verify.VIOLATED for r in reports) else EXIT_OK


# -- search ------------------------------------------------------------------------

def cmd_search_cli(args) -> int:
    init = _load(args.init) if args.init else None
    forbid = patterns.parse_patterns(args.forbid) if args.forbid else []
    job = SearchJob(forbid=forbid, target_chi=args.target_chi, n=args.n, seed=args.seed,
                    budget=args.budget, restarts=args.restarts, density=args.density, init=init)
    start = time.perf_counter()
    report = cmd_search(job, workers=args.workers)
    elapsed = time.perf_counter() - start
    if report["found"] and args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        _dump({"job": job.to_dict(), **report["certificate"]}, str(out / "certificate.json"))
    if args.json:
        _dump(report)
    else:
        status = "FOUND" if report["found"] else "nothing found"
        print(f"{status}: best chi {report['best_chi']} after {report['iterations']} iterations")
    print(f"# elapsed {elapsed:.2f}s", file=sys.stderr)
    return EXIT_HIT if report["found"] else EXIT_OK


# -- table -------------------------------------------------------------------------

def _parse_range(text: str) -> range:
    try:
        if ".." in text:
            a, b = text.split("..")
            return range(int(a), int(b) + 1)
        return range(int(text), int(text) + 1)
    except ValueError:
        raise UsageError(f"bad range {text!r}; use A..B") from None


def _family(family: str, n: int, k: int):
    if family == "shift":
        return generators.shift_graph(k, n), f"shift({k},{n})"
    if family == "cycle":
        return generators.directed_cycle(n), f"C{n}"
    if family == "tt":
        return generators.transitive_tournament(n), f"TT{n}"
    if family == "line-tt":
        return generators.line_digraph(generators.transitive_tournament(n)), f"L(TT{n})"
    if family == "line-iter":
        g = generators.transitive_tournament(k)
        for _ in range(n):
            g = generators.line_digraph(g)
        return g, f"L^{n}(TT{k})"
    raise UsageError(f"unknown family {family}")


def cmd_table(family: str, sizes, k: int = 2, dot_dir: str | None = None) -> list[dict]:
    """One row per instance: n, chi, tri, trans, omega and F-freeness flags."""
    rows = []
    flags = [patterns.parse_pattern(p) for p in FLAG_PATTERNS]
    for size in sizes:
        g, label = _family(family, size, k)
        row = {"instance": label, "n": g.n, "m": g.m}
        inv = coloring.graph_invariants(g)
        row.update(inv.to_dict())
        for f in flags:
            row[f"{f.name}-free"] = patterns.find_induced(g, f) is None
        rows.append(row)
        if dot_dir:
            Path(dot_dir).mkdir(parents=True, exist_ok=True)
            safe = label.replace("(", "_").replace(")", "").replace(",", "_").replace("^", "")
            (Path(dot_dir) / f"{safe}.dot").write_text(g.to_dot(name=safe.replace("-", "_")))
    return rows


def cmd_table_cli(args) -> int:
    rows = cmd_table(args.family, _parse_range(args.range), args.k, args.dot)
    if args.json:
        for r in rows:
            print(json.dumps(r, sort_keys=True))
    else:
        cols = ["instance", "n", "m", "chi", "tri", "trans", "omega"]
        short = {f"{patterns.parse_pattern(p).name}-free": patterns.parse_pattern(p).name for p in FLAG_PATTERNS}
        view = [{**{c: r[c] for c in cols}, **{short[c]: ("free" if r[c] else "-") for c in short}} for r in rows]
        print(_table(view, cols + list(short.values())))
    return EXIT_OK


# -- export-dot --------------------------------------------------------------------

def cmd_export_dot(args) -> int:
    g = _load(args.file)
    text = g.to_dot(name=args.name)
    if args.coloring:
        col = coloring.Coloring.from_dict(json.loads(Path(args.coloring).read_text()))
        if len(col.colors) != g.n:
            raise UsageError("colouring size does not match the graph")
        palette = ["red", "blue", "green", "orange", "purple", "brown", "cyan", "gray"]
        extra = "".join(f'  {v} [color={palette[c % len(palette)]}];\n' for v, c in enumerate(col.colors))
        text = text.rstrip().rstrip("}") + extra + "}\n"
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


# -- parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="chiforb", description="Oriented graphs with forbidden induced subgraphs.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        return sp

    g = common(sub.add_parser("gen", help="generate a named family or random sample"))
    g.add_argument("kind", choices=generators.KINDS)
    g.add_argument("--n", type=int)
    g.add_argument("--k", type=int)
    g.add_argument("--l", type=int)
    g.add_argument("--p", type=float)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--blocks", help="comma-separated block lengths for an oriented path")
    g.add_argument("--sign", default="+", choices=["+", "-"])
    g.add_argument("--forbid", help="comma-separated pattern names")
    g.add_argument("--max-tries", type=int, default=1000)
    g.add_argument("--of", choices=[k for k in generators.KINDS if k != "line"], help="base kind for line")
    g.add_argument("--iterate", type=int, default=1, help="number of line-digraph iterations")
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_gen)

    d = common(sub.add_parser("detect", help="search for induced patterns"))
    d.add_argument("file")
    d.add_argument("--patterns", default="tt3,c3,p21+")
    d.set_defaults(func=cmd_detect)

    c = common(sub.add_parser("chi", help="exact chromatic number"))
    c.add_argument("file")
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_chi)

    t = common(sub.add_parser("tri", help="exact triangle-free chromatic number"))
    t.add_argument("file")
    t.add_argument("--directed", action="store_true", help="only directed 3-cycles count as triangles")
    t.add_argument("-o", "--output")
    t.set_defaults(func=cmd_tri)

    col = common(sub.add_parser("color", help="constructive colouring for a forbidden class"))
    col.add_argument("file")
    col.add_argument("--method", default="auto", choices=["auto", *METHODS])
    col.add_argument("-o", "--output")
    col.set_defaults(func=cmd_color)

    v = common(sub.add_parser("verify", help="run a lemma check on a file or a seeded corpus"))
    v.add_argument("file", nargs="?")
    v.add_argument("--suite", required=True, choices=SUITES)
    v.add_argument("--corpus", help="n,p,count,seed")
    v.add_argument("--k", type=int, default=2)
    v.add_argument("--l", type=int)
    v.add_argument("--tau")
    v.add_argument("--p", help="hyperedge density for the comb suite (rational)")
    v.add_argument("--max-tries", type=int, default=1000)
    v.set_defaults(func=cmd_verify)

    s = common(sub.add_parser("search", help="hill-climbing search for high chi in a forbidden class"))
    s.add_argument("--forbid", default="")
    s.add_argument("--target-chi", type=int, required=True)
    s.add_argument("--n", type=int, default=10)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--budget", type=int, default=1000)
    s.add_argument("--restarts", type=int, default=4)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--density", type=float, default=0.5)
    s.add_argument("--init", help="start every restart from this graph")
    s.add_argument("--out", help="directory for the certificate of a hit")
    s.set_defaults(func=cmd_search_cli)

    tb = common(sub.add_parser("table", help="invariants over a family"))
    tb.add_argument("family", choices=["shift", "cycle", "tt", "line-tt", "line-iter"])
    tb.add_argument("--range", required=True, help="A..B (iterations for line-iter)")
    tb.add_argument("--k", type=int, default=2, help="subset size for shift, base TT order for line-iter")
    tb.add_argument("--dot", help="directory for DOT dumps")
    tb.set_defaults(func=cmd_table_cli)

    e = sub.add_parser("export-dot", help="write a graph as Graphviz DOT")
    e.add_argument("file")
    e.add_argument("--name", default="D")
    e.add_argument("--coloring", help="colouring JSON to paint the vertices")
    e.add_argument("-o", "--output")
    e.set_defaults(func=cmd_export_dot)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except StructureViolation as exc:
        _dump({"structure_violation": exc.to_dict()})
        return EXIT_HIT
    except (UsageError, NotInClass, OddCycleFound, ChiForbError, ValueError, OSError, KeyError,
            json.JSONDecodeError) as exc:
        print(f"chiforb: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
