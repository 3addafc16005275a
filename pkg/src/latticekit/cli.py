"""Command-line front end.

Exit codes: 0 on success, 1 for input errors, 2 when a mathematical
assertion fails (including failed ``verify`` instances).
"""

import argparse
import json
import sys
from typing import List, Optional, Sequence, Tuple

from . import __version__
from .coloring import DEFAULT_BUDGET_MS
from .dimension import (DEFAULT_ORACLE_CAP, critical_pairs, dim_bounds, dim_sd_extremal_coloring,
                        dimension_oracle)
from .doubling import DoublingScript, certify, random_script, run_script
from .errors import (AssertionFailure, CapExceeded, InputError, InvalidParameter, LatticeKitError,
                     Timeout, UnsupportedFormat)
from .families import bubble, hochschild, parabolic_tamari, parse_composition, word_lattice
from .galois import DirectedGraph, canonical_join_graph, galois_graph, lattice_from_galois
from .gentle import GentleQuiver, torsion_lattice
from .io import dumps_lattice, graph_to_dot, lattice_to_dict, lattice_to_dot, loads_lattice
from .labelling import gamma_labellings, left_modular
from .lattice import Lattice, chain_lattice, extremality, semidistributivity
from .shelling import (DEFAULT_CHAIN_CAP, DEFAULT_FACET_CAP, all_source_sets, brute_force_shelling,
                       disjoint_source_sets, facet_adjacency, shellable_verdict)
from .tafs import DecoratedMultigraph, classify_arrows, counterexample_pipeline, is_tafs
from .verify import SUITES, run_suite

EXPORT_FORMATS = ("dot_hasse", "dot_galois", "dot_cjg", "json")
GENERATORS = ("chain", "hoch", "bubble", "words", "ptam", "gentle")


# input helpers ---------------------------------------------------------------

def _read(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _load_json(path: str):
    try:
        return json.loads(_read(path))
    except json.JSONDecodeError as exc:
        raise InvalidParameter(f"{path}: invalid JSON at line {exc.lineno}, "
                               f"column {exc.colno}: {exc.msg}") from None


def _int(text: str, what: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise InvalidParameter(f"{what} must be an integer, got {text!r}") from None


def generate(kind: str, params: Sequence[str]) -> Lattice:
    def need(k: int) -> None:
        if len(params) != k:
            raise InvalidParameter(f"generator {kind!r} takes {k} argument(s), got {len(params)}")

    if kind == "chain":
        need(1)
        return chain_lattice(_int(params[0], "length"))
    if kind == "hoch":
        need(1)
        return hochschild(_int(params[0], "n"))[1]
    if kind == "bubble":
        need(2)
        return bubble(_int(params[0], "m"), _int(params[1], "n"))[1]
    if kind == "words":
        need(2)
        return word_lattice(_int(params[0], "m"), _int(params[1], "n"))
    if kind == "ptam":
        need(1)
        return parabolic_tamari(parse_composition(params[0]))[1]
    if kind == "gentle":
        need(1)
        return torsion_lattice(GentleQuiver.from_dict(_load_json(params[0])))
    raise InvalidParameter(f"unknown generator {kind!r}; choose from {', '.join(GENERATORS)}")


def _load_input(args) -> Tuple[Lattice, Optional[object]]:
    """Lattice from a positional JSON file, ``--gen`` or ``--script``, plus any doubling certificate."""
    sources = [args.input is not None, bool(args.gen), args.script is not None]
    if sum(sources) != 1:
        raise InvalidParameter("give exactly one of INPUT, --gen KIND ARGS, or --script FILE")
    if args.gen:
        return generate(args.gen[0], args.gen[1:]), None
    if args.script is not None:
        script = DoublingScript.from_dict(_load_json(args.script))
        return run_script(script)
    return loads_lattice(_read(args.input)), None


def _load_graph(path: str) -> DirectedGraph:
    data = _load_json(path)
    try:
        m = int(data["m"])
        edges = [(int(u), int(v)) for u, v in data["edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidParameter(f'graph JSON needs "m" and "edges": {exc}') from None
    if any(not (0 <= u < m and 0 <= v < m) for u, v in edges):
        raise InvalidParameter("graph edge endpoint out of range")
    return DirectedGraph.from_edges(m, edges, data.get("labels"))


def _emit(args, text: str) -> None:
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(args, data) -> None:
    _emit(args, json.dumps(data, indent=2) + "\n")


# reports ----------------------------------------------------------------------

def _dimension_entry(L: Lattice, cap: int, budget_ms: Optional[int]) -> dict:
    if L.n == 1:
        return {"method": "convention", "value": 1}
    try:
        sd = semidistributivity(L).is_sd
        if sd and extremality(L).extremal:
            return {"method": "galois", "value": dim_sd_extremal_coloring(L, budget_ms).chi}
        return {"method": "oracle", "value": dimension_oracle(L, cap, budget_ms)}
    except CapExceeded:
        return {"method": "bounds", "value": None}
    except Timeout:
        return {"method": "timeout", "value": None}


def analysis_report(L: Lattice, cert=None, cap: Optional[int] = None,
                    budget_ms: Optional[int] = DEFAULT_BUDGET_MS) -> dict:
    ext = extremality(L)
    sd = semidistributivity(L)
    lm = left_modular(L)
    verdict = shellable_verdict(L, cert, cap or DEFAULT_CHAIN_CAP)
    bounds = dim_bounds(L)
    return {
        "n": L.n,
        "length": ext.length,
        "n_jirr": ext.n_jirr,
        "n_mirr": ext.n_mirr,
        "extremal": ext.extremal,
        "join_extremal": ext.join_extremal,
        "meet_extremal": ext.meet_extremal,
        "join_semidistributive": sd.is_jsd,
        "meet_semidistributive": sd.is_msd,
        "semidistributive": sd.is_sd,
        "lm_chain": list(lm.lm_chain) if lm.lm_chain is not None else None,
        "shellable": {"verdict": verdict.verdict, "reason": verdict.reason},
        "dimension": _dimension_entry(L, cap or DEFAULT_ORACLE_CAP, budget_ms),
        "bounds": {"lower": bounds.lower, "upper": bounds.upper, "cover_lb": bounds.cover_lb,
                   "cover_lb_valid": bounds.cover_lb_valid},
    }


def _galois_dict(G) -> dict:
    data = {"m": G.m, "edges": [list(e) for e in G.edges()], "labels": list(G.labels or [])}
    if hasattr(G, "jirr"):
        data.update(jirr=list(G.jirr), mirr=list(G.mirr), chain=list(G.chain.elements))
    return data


# commands ---------------------------------------------------------------------

def cmd_gen(args) -> int:
    if args.kind == "script":
        if len(args.params) not in (1, 2):
            raise InvalidParameter("usage: gen script STEPS [MODE]")
        mode = args.params[1] if len(args.params) == 2 else "uniform_interval"
        script = random_script(_int(args.params[0], "steps"), args.seed, mode, args.cap)
        _emit(args, script.to_json() + "\n")
        return 0
    _emit(args, dumps_lattice(generate(args.kind, args.params)) + "\n")
    return 0


def cmd_analyze(args) -> int:
    L, cert = _load_input(args)
    _emit_json(args, analysis_report(L, cert, args.cap, args.budget_ms))
    return 0


def cmd_labelling(args) -> int:
    L, _ = _load_input(args)
    chain = None
    if args.chain:
        chain = [_int(x, "chain element") for x in args.chain.replace(",", " ").split()]
    try:
        labs = gamma_labellings(L, chain)
    except ValueError as exc:
        raise InvalidParameter(str(exc)) from None
    if args.dot:
        tags = {e: f"{labs.gamma1p[e]}|{labs.gamma2p[e]}" for e in L.covers}
        _emit(args, lattice_to_dot(L, tags))
        return 0
    rows = [f"chain: {' '.join(L.label(x) for x in labs.gamma1.chain.elements)}",
            f"{'edge':<24} g1 g1' g2 g2'"]
    for e in L.covers:
        name = f"{L.label(e[0])} < {L.label(e[1])}"
        rows.append(f"{name:<24} {labs.gamma1[e]:>2} {labs.gamma1p[e]:>3} {labs.gamma2[e]:>2} "
                    f"{labs.gamma2p[e]:>3}")
    _emit(args, "\n".join(rows) + "\n")
    return 0


def cmd_double(args) -> int:
    script = DoublingScript.from_dict(_load_json(args.script))
    L, cert = run_script(script)
    out = {"lattice": lattice_to_dict(L)}
    if args.certify:
        v = certify(cert)
        out["certificate"] = cert.to_dict()
        out["verdicts"] = {"extremal": v.extremal, "join_extremal": v.join_extremal,
                           "meet_extremal": v.meet_extremal, "left_modular": v.left_modular}
    _emit_json(args, out)
    return 0


def cmd_galois(args) -> int:
    L, _ = _load_input(args)
    chain = None
    if args.chain:
        chain = [_int(x, "chain element") for x in args.chain.replace(",", " ").split()]
    try:
        G = galois_graph(L, chain)
    except ValueError as exc:
        raise InvalidParameter(str(exc)) from None
    if args.dot:
        _emit(args, graph_to_dot(G.m, G.edges(), G.labels, directed=True, name="Galois"))
    else:
        _emit_json(args, _galois_dict(G))
    return 0


def cmd_cjg(args) -> int:
    L, _ = _load_input(args)
    H = canonical_join_graph(L)
    if args.dot:
        _emit(args, graph_to_dot(H.m, H.edges(), H.labels, directed=False, name="CJG"))
    else:
        _emit_json(args, {"m": H.m, "edges": [list(e) for e in H.edges()], "labels": list(H.labels or [])})
    return 0


def cmd_reconstruct(args) -> int:
    L, _ = lattice_from_galois(_load_graph(args.graph))
    _emit(args, dumps_lattice(L) + "\n")
    return 0


def cmd_dim(args) -> int:
    L, _ = _load_input(args)
    if args.method == "galois":
        res = dim_sd_extremal_coloring(L, args.budget_ms)
        out = {"chi": res.chi, "clique": list(res.clique), "coloring": list(res.coloring)}
    elif args.method == "oracle":
        out = {"dim": dimension_oracle(L, args.cap or DEFAULT_ORACLE_CAP, args.budget_ms),
               "critical_pairs": [list(p) for p in critical_pairs(L).pairs]}
    else:
        b = dim_bounds(L)
        out = {"lower": b.lower, "upper": b.upper, "cover_lb": b.cover_lb,
               "cover_lb_valid": b.cover_lb_valid}
    _emit_json(args, out)
    return 0


def cmd_shell(args) -> int:
    L, cert = _load_input(args)
    if args.fa:
        fa = facet_adjacency(L, args.cap or DEFAULT_CHAIN_CAP)
        if args.dot:
            _emit(args, graph_to_dot(fa.m, fa.edges(), fa.labels, directed=True, name="FA"))
            return 0
        report = disjoint_source_sets(fa)
        _emit_json(args, {
            "chains": [list(c) for c in fa.chains],
            "edges": [list(e) for e in fa.edges()],
            "labels": list(fa.labels or []),
            "disjoint_source_sets": [list(s) for s in report.found] if report.found else None,
            "source_sets": [list(s) for s in all_source_sets(fa)] if args.all else None,
        })
        return 0
    if args.brute:
        order = brute_force_shelling(L, args.cap or DEFAULT_FACET_CAP)
        _emit_json(args, {"shelling": [list(c) for c in order] if order is not None else None})
        return 0
    v = shellable_verdict(L, cert, args.cap or DEFAULT_CHAIN_CAP)
    _emit_json(args, {"verdict": v.verdict, "reason": v.reason})
    return 0


def cmd_tafs(args) -> int:
    if args.action == "counterexample":
        report = counterexample_pipeline(sweep=not args.no_sweep, jobs=args.jobs, strict=False)
        _emit_json(args, report)
        if report["failed_stages"]:
            print(f"error: stage '{report['failed_stages'][0]}' failed", file=sys.stderr)
            return 2
        return 0
    if args.file is None:
        raise InvalidParameter(f"tafs {args.action} needs a multigraph JSON file")
    G = DecoratedMultigraph.from_dict(_load_json(args.file))
    if args.action == "classify":
        _emit_json(args, classify_arrows(G).to_dict())
        return 0
    res = is_tafs(G)
    _emit_json(args, {"ok": res.ok, "violation": res.violation})
    return 0


def cmd_verify(args) -> int:
    result = run_suite(args.suite, seed=args.seed, count=args.count, jobs=args.jobs,
                       budget_ms=args.budget_ms)
    for f in result.failures:
        print(f"FAIL {f['instance']}: {f['detail']}", file=sys.stderr)
    print(f"{result.suite}: {result.passed}/{result.total} pass")
    if args.output:
        with open(args.output, "w") as fh:
            json.dump(result.to_dict(), fh, indent=2)
            fh.write("\n")
    return 0 if result.ok else 2


def cmd_export(args) -> int:
    if args.format not in EXPORT_FORMATS:
        raise UnsupportedFormat(f"unknown format {args.format!r}; choose from {', '.join(EXPORT_FORMATS)}")
    L, _ = _load_input(args)
    if args.format == "json":
        _emit(args, dumps_lattice(L) + "\n")
    elif args.format == "dot_hasse":
        _emit(args, lattice_to_dot(L))
    elif args.format == "dot_galois":
        G = galois_graph(L)
        _emit(args, graph_to_dot(G.m, G.edges(), G.labels, directed=True, name="Galois"))
    else:
        H = canonical_join_graph(L)
        _emit(args, graph_to_dot(H.m, H.edges(), H.labels, directed=False, name="CJG"))
    return 0


# parser -----------------------------------------------------------------------

def _budget(text: str) -> Optional[int]:
    value = int(text)
    return None if value <= 0 else value


class _Parser(argparse.ArgumentParser):
    # usage errors are input errors; exit code 2 is reserved for failed assertions
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="root random seed")
    common.add_argument("--jobs", type=int, default=1, help="worker processes")
    common.add_argument("--budget-ms", type=_budget, default=DEFAULT_BUDGET_MS,
                        help="solver time budget in milliseconds (0 disables)")
    common.add_argument("--cap", type=int, default=None, help="override the enumeration cap")
    common.add_argument("-o", "--output", help="write to this file instead of stdout")

    lattice_in = _Parser(add_help=False)
    lattice_in.add_argument("input", nargs="?", help="lattice JSON file ('-' for stdin)")
    lattice_in.add_argument("--gen", nargs="+", metavar="ARG", help="generator, e.g. --gen hoch 3")
    lattice_in.add_argument("--script", help="doubling script JSON")

    parser = _Parser(prog="latticekit", description="Finite lattice toolkit.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", parents=[common], help="generate a family lattice or random script")
    p.add_argument("kind", help=f"one of {', '.join(GENERATORS + ('script',))}")
    p.add_argument("params", nargs="*")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("analyze", parents=[common, lattice_in], help="full property report")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("labelling", parents=[common, lattice_in], help="the four chain labellings")
    p.add_argument("--chain", help="chain element ids, bottom to top")
    p.add_argument("--dot", action="store_true", help="DOT with g1'|g2' edge labels")
    p.set_defaults(func=cmd_labelling)

    p = sub.add_parser("double", parents=[common], help="run a doubling script")
    p.add_argument("--script", required=True)
    p.add_argument("--certify", action="store_true")
    p.set_defaults(func=cmd_double)

    p = sub.add_parser("galois", parents=[common, lattice_in], help="Galois graph of an extremal lattice")
    p.add_argument("--chain", help="longest chain element ids")
    p.add_argument("--dot", action="store_true")
    p.set_defaults(func=cmd_galois)

    p = sub.add_parser("cjg", parents=[common, lattice_in], help="canonical join graph")
    p.add_argument("--dot", action="store_true")
    p.set_defaults(func=cmd_cjg)

    p = sub.add_parser("reconstruct", parents=[common], help="lattice of maximal orthogonal pairs")
    p.add_argument("graph", help='graph JSON {"m": int, "edges": [[u, v], ...]}')
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("dim", parents=[common, lattice_in], help="order dimension")
    p.add_argument("--method", choices=("galois", "oracle", "bounds"), default="galois")
    p.set_defaults(func=cmd_dim)

    p = sub.add_parser("shell", parents=[common, lattice_in], help="shellability tools")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--verdict", action="store_true", help="certificate-based verdict (default)")
    mode.add_argument("--fa", action="store_true", help="facet adjacency graph and source sets")
    mode.add_argument("--brute", action="store_true", help="brute-force shelling search")
    p.add_argument("--dot", action="store_true", help="with --fa, print DOT")
    p.add_argument("--all", action="store_true", help="with --fa, enumerate every source set")
    p.set_defaults(func=cmd_shell)

    p = sub.add_parser("tafs", parents=[common], help="two-acyclic factorization systems")
    p.add_argument("action", choices=("classify", "check", "counterexample"))
    p.add_argument("file", nargs="?", help="decorated multigraph JSON")
    p.add_argument("--no-sweep", action="store_true", help="skip the exhaustive orientation sweep")
    p.set_defaults(func=cmd_tafs)

    p = sub.add_parser("verify", parents=[common], help="run a seeded property suite")
    p.add_argument("suite", help=f"one of {', '.join(SUITES)}")
    p.add_argument("--count", type=int, default=None, help="number of random instances")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("export", parents=[common, lattice_in], help="export JSON or DOT")
    p.add_argument("--format", required=True, help=f"one of {', '.join(EXPORT_FORMATS)}")
    p.set_defaults(func=cmd_export)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except AssertionFailure as exc:
        print(f"assertion failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except (InputError, LatticeKitError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
