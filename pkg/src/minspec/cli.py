"""Command-line interface.

Exit status: 0 on success, 1 when a verification fails, 2 on usage or
parse errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, Sequence

from .algebra import classify_structure, structure_profile
from .parse import ParseError, parse_algebra, parse_equation, render
from .search import scan_groupoids, scan_latin_squares, scan_monounary, scan_semigroups
from .spectrum import (Bounds, NotMinimal, count_associative_triples, is_d_minimal, probability,
                       spectrum, unary_bounds)
from .verify import verify_paper_suite

CLI_SCHEMA = "minspec.cli/1"


class UsageError(Exception):
    pass


def _load_algebra(spec: str):
    if os.path.isfile(spec):
        with open(spec, encoding="utf-8") as fh:
            spec = fh.read()
    return parse_algebra(spec)


def _bounds(args, G=None) -> Bounds:
    if G is not None and not G.is_binary and args.max_size is None:
        b = unary_bounds(G.order)
        return Bounds(b.max_size, args.max_vars or b.max_vars)
    return Bounds(3 if args.max_size is None else args.max_size,
                  3 if args.max_vars is None else args.max_vars)


def _threads(args) -> int:
    if args.threads is not None:
        return args.threads
    env = os.environ.get("MINSPEC_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise UsageError(f"MINSPEC_THREADS must be an integer, got {env!r}")
    return 1


def _emit(args, human: str, payload: dict) -> None:
    if args.format == "json":
        payload = {"schema": CLI_SCHEMA, "command": args.command, **payload}
        sys.stdout.write(json.dumps(payload, sort_keys=True) + "\n")
    else:
        sys.stdout.write(human if human.endswith("\n") else human + "\n")


def cmd_prob(args) -> int:
    G = _load_algebra(args.algebra)
    e = parse_equation(args.equation)
    p = probability(e, G)
    _emit(args, str(p), {"equation": render(e), "probability": str(p)})
    return 0


def cmd_spectrum(args) -> int:
    G = _load_algebra(args.algebra)
    b = _bounds(args, G)
    s = spectrum(G, b)
    human = str(s)
    if args.witnesses:
        human = "\n".join(f"{p}\t{render(e)}" for p, e in s.entries)
    _emit(args, human, {
        "bounds": {"max_size": b.max_size, "max_vars": b.max_vars},
        "values": [str(p) for p in s.values],
        "witnesses": [render(e) for _, e in s.entries],
    })
    return 0


def cmd_minimal(args) -> int:
    G = _load_algebra(args.algebra)
    b = _bounds(args, G)
    v = is_d_minimal(G, b)
    payload = {"bounds": {"max_size": b.max_size, "max_vars": b.max_vars},
               "minimal": not isinstance(v, NotMinimal)}
    if isinstance(v, NotMinimal):
        payload.update(witness=render(v.witness), probability=str(v.probability))
    _emit(args, str(v), payload)
    return 0


def cmd_classify(args) -> int:
    n = args.order
    b = Bounds(3 if args.max_size is None else args.max_size,
               3 if args.max_vars is None else args.max_vars)
    if args.kind == "groupoid":
        r = scan_groupoids(n, b, args.mode, args.allow_anti, _threads(args))
    elif args.kind == "latin":
        r = scan_latin_squares(n, b, args.allow_anti)
    elif args.kind == "semigroup":
        r = scan_semigroups(n, b, args.allow_anti)
    else:
        ub = unary_bounds(n)
        r = scan_monounary(n, Bounds(ub.max_size if args.max_size is None else args.max_size,
                                     ub.max_vars if args.max_vars is None else args.max_vars))
    sys.stdout.write(r.to_jsonl() if args.format == "json" else r.to_human())
    return 0


def cmd_props(args) -> int:
    G = _load_algebra(args.algebra)
    if not G.is_binary:
        raise UsageError("props needs a groupoid")
    p = structure_profile(G)
    cls = classify_structure(G)
    triples = count_associative_triples(G)
    flags = p.as_dict()
    lines = [f"class: {cls}", f"associative triples: {triples}/{G.order ** 3}"]
    lines += [f"{k}: {v}" for k, v in flags.items()]
    _emit(args, "\n".join(lines), {"class": str(cls), "associative_triples": triples, "flags": flags})
    return 0


def cmd_verify(args) -> int:
    report = verify_paper_suite(args.level)
    if args.format == "json":
        sys.stdout.write(report.to_json(timing=args.timing))
    else:
        sys.stdout.write(report.to_human(timing=args.timing))
    return 0 if report.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="minspec", description="Exact equational probabilities of finite algebras.")
    parser.add_argument("--format", choices=("human", "json"), default="human")
    parser.add_argument("--threads", type=int, default=None,
                        help="worker processes for scans (default: $MINSPEC_THREADS or 1)")
    sub = parser.add_subparsers(dest="command", required=True)
    # Global options are also accepted after the subcommand.
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("human", "json"), default=argparse.SUPPRESS)
    common.add_argument("--threads", type=int, default=argparse.SUPPRESS)

    def algebra_arg(p):
        p.add_argument("-a", "--algebra", required=True, help="constructor expression or file path")

    def bound_args(p):
        p.add_argument("--max-size", type=int, default=None)
        p.add_argument("--max-vars", type=int, default=None)

    p = sub.add_parser("prob", parents=[common], help="probability of one equation")
    algebra_arg(p)
    p.add_argument("-e", "--equation", required=True)
    p.set_defaults(func=cmd_prob)

    p = sub.add_parser("spectrum", parents=[common], help="bounded spectrum")
    algebra_arg(p)
    bound_args(p)
    p.add_argument("--witnesses", action="store_true", help="print a witness equation per value")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("minimal", parents=[common], help="bounded minimality verdict")
    algebra_arg(p)
    bound_args(p)
    p.set_defaults(func=cmd_minimal)

    p = sub.add_parser("classify", parents=[common], help="exhaustive census of one order")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--mode", choices=("raw", "pruned"), default="raw")
    p.add_argument("--kind", choices=("groupoid", "latin", "unary", "semigroup"), default="groupoid")
    p.add_argument("--allow-anti", action="store_true", help="merge anti-isomorphic survivors")
    bound_args(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("props", parents=[common], help="structural flags of a groupoid")
    algebra_arg(p)
    p.set_defaults(func=cmd_props)

    p = sub.add_parser("verify", parents=[common], help="run the reproduction checks")
    p.add_argument("--level", choices=("quick", "full"), default="quick")
    p.add_argument("--timing", action="store_true", help="include wall times (output no longer reproducible)")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args)
    except ParseError as exc:
        sys.stderr.write(f"minspec: parse error at offset {exc.offset}: {exc.message}\n")
        return 2
    except (UsageError, ValueError, IndexError) as exc:
        sys.stderr.write(f"minspec: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
