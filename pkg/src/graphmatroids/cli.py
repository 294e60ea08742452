"""Command-line entry point.  Exit codes: 0 pass, 1 violation, 2 usage error."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import cofactor, count
from .count import CountParams
from .generators import FAMILIES, construct
from .graph import GraphError, graph_document, read_graph, write_graph
from .matroid import OracleRefusal, vertical_connectivity
from .reconstruct import ReconstructionError, load_labeled_matroid, reconstruct
from .suites import SUITES, SuiteConfig, run_suite

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse exits with 2 already; keep the message short
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _load(path: str):
    try:
        return read_graph(Path(path).read_bytes())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except GraphError as exc:
        raise UsageError(str(exc)) from None


def _edges(g, spec: str | None):
    if spec is None:
        return None
    ids = [x for x in spec.split(",") if x]
    unknown = [x for x in ids if x not in g.edges]
    if unknown:
        raise UsageError(f"unknown edge ids: {', '.join(unknown)}")
    return ids


def _params(args) -> CountParams:
    try:
        return CountParams(args.k, args.l)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _emit(doc: dict) -> None:
    print(json.dumps(doc, indent=2, sort_keys=True))


def cmd_rank(args) -> int:
    g = _load(args.input)
    edges = _edges(g, args.edges)
    if args.cofactor:
        value, cert = cofactor.rt(g, edges, args.t or 1)
        _emit(cert.to_json())
        return EXIT_OK
    p = _params(args)
    if args.t and args.t > 1:
        p = CountParams(p.k * args.t, p.l * args.t)
    ids = list(g.edges) if edges is None else edges
    if not ids:
        _emit({"rank": 0, "F": [], "cover": []})
        return EXIT_OK
    _emit(count.rank_certificate(g, p, ids).to_json())
    return EXIT_OK


PREDICATES = {
    "sparse": count.is_sparse,
    "rigid": count.is_rigid,
    "tight": count.is_tight,
    "redundant": count.is_redundant,
    "mconnected": count.is_mconnected,
}


def cmd_check(args) -> int:
    g = _load(args.input)
    result = PREDICATES[args.predicate](g, _params(args))
    _emit({"predicate": args.predicate, "k": args.k, "l": args.l, "value": result})
    return EXIT_OK


def cmd_components(args) -> int:
    g = _load(args.input)
    comps = count.m_components(g, _params(args))
    _emit({"components": [{"edges": sorted(map(str, c.edges)), "trivial": c.trivial} for c in comps]})
    return EXIT_OK


def cmd_vconn(args) -> int:
    g = _load(args.input)
    if args.family == "cofactor":
        o = cofactor.rank_oracle(g, args.t or 1)
    else:
        o = count.count_oracle(g, _params(args))
    vc, sep = vertical_connectivity(o)
    _emit({"vertical_connectivity": vc, "separation": sep.to_json() if sep else None})
    return EXIT_OK


def _parse_params(items: list[str]) -> dict:
    out = {}
    for item in items:
        key, sep, val = item.partition("=")
        if not sep:
            raise UsageError(f"parameter {item!r} is not key=value")
        try:
            out[key] = int(val)
        except ValueError:
            raise UsageError(f"parameter {key} must be an integer") from None
    return out


def cmd_construct(args) -> int:
    params = _parse_params(args.params or [])
    if args.family == "disjoint_union":
        raise UsageError("disjoint_union needs graphs, not integers; use the Python API")
    try:
        result = construct(args.family, **params)
    except GraphError as exc:
        raise UsageError(str(exc)) from None
    if args.family == "cofactor_packing":
        kn, parts = result
        doc = graph_document(kn)
        doc["parts"] = [sorted(map(str, p.edges)) for p in parts]
        data = (json.dumps(doc, separators=(",", ":")) + "\n").encode()
    else:
        data = write_graph(result)
    if args.out:
        Path(args.out).write_bytes(data)
    else:
        sys.stdout.write(data.decode())
    return EXIT_OK


def cmd_reconstruct(args) -> int:
    try:
        m = load_labeled_matroid(Path(args.input).read_bytes())
    except (OSError, ValueError, KeyError) as exc:
        raise UsageError(f"bad matroid document: {exc}") from None
    try:
        g = reconstruct(m, seed=args.seed)
    except ReconstructionError as exc:
        print(f"reconstruction failed: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    data = write_graph(g)
    if args.out:
        Path(args.out).write_bytes(data)
    else:
        sys.stdout.write(data.decode())
    return EXIT_OK


def cmd_verify(args) -> int:
    if not args.all and not args.suite:
        raise UsageError("verify needs --suite NAME or --all")
    names = list(SUITES) if args.all else [args.suite]
    for name in names:
        if name not in SUITES:
            raise UsageError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    cfg = SuiteConfig(seed=args.seed, samples=args.samples, max_n=args.max_n, mutant=args.mutant)
    reports = []
    for name in names:
        rep = run_suite(name, cfg)
        status = "PASS" if rep.ok else "FAIL"
        print(f"{status} {name}: {rep.cases} cases, {len(rep.violations)} violations ({rep.wall_time:.1f}s)", file=sys.stderr)
        reports.append(rep)
    doc = {"reports": [r.to_json() for r in reports]}
    if args.json:
        Path(args.json).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    else:
        _emit(doc)
    return EXIT_OK if all(r.ok for r in reports) else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="graphmatroids", description=__doc__)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def count_args(p, required=True):
        p.add_argument("--k", type=int, required=required)
        p.add_argument("--l", type=int, required=required)

    p = sub.add_parser("rank", help="rank and certificate of an edge set")
    count_args(p, required=False)
    p.add_argument("--t", type=int, default=None, help="union multiplicity")
    p.add_argument("--cofactor", action="store_true", help="cofactor matroid instead of a count matroid")
    p.add_argument("--input", required=True)
    p.add_argument("--edges", help="comma-separated edge ids (default: all)")
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("check", help="evaluate a rigidity predicate")
    p.add_argument("--predicate", choices=sorted(PREDICATES), required=True)
    count_args(p)
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("components", help="count matroid components")
    count_args(p)
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_components)

    p = sub.add_parser("vconn", help="vertical connectivity (exhaustive, small inputs)")
    p.add_argument("--input", required=True)
    p.add_argument("--family", choices=["count", "cofactor"], default="count")
    count_args(p, required=False)
    p.add_argument("--t", type=int, default=None)
    p.set_defaults(func=cmd_vconn)

    p = sub.add_parser("construct", help="build a named graph family")
    p.add_argument("--family", choices=sorted(FAMILIES), required=True)
    p.add_argument("--params", nargs="*", metavar="KEY=VALUE")
    p.add_argument("--out")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("reconstruct", help="recover a graph from a labelled matroid")
    p.add_argument("--input", required=True)
    p.add_argument("--out")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("--suite")
    p.add_argument("--all", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int)
    p.add_argument("--max-n", "--n", type=int, dest="max_n")
    p.add_argument("--json")
    p.add_argument("--mutant", action="store_true", help="run the deliberately broken variant")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("missing subcommand")
        if args.command in ("rank", "vconn") and not getattr(args, "cofactor", False):
            if args.command == "rank" or args.family == "count":
                if args.k is None or args.l is None:
                    raise UsageError("--k and --l are required for count matroids")
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OracleRefusal as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_USAGE
