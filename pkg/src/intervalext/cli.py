"""Command-line front end.

Exit codes: 0 success, 1 a definitive negative answer (or a self-check
failure), 2 unreadable or malformed input, 3 simultaneous instance with
too many shared vertices.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__, fuzz, repext, simrep
from .errors import (
    BoundExceeded,
    IntervalExtError,
    InvalidInstance,
    InvalidPartial,
    NoSimRep,
    NotExtendible,
    NotInterval,
    ParseError,
)
from .graph_core import Graph, check_extension, load_graph

EXIT_OK, EXIT_NO, EXIT_INPUT, EXIT_BOUND = 0, 1, 2, 3


class _InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except (OSError, UnicodeDecodeError) as exc:
        raise _InputError(f"cannot read {path}: {exc}") from exc


def _load_graph(path: str) -> Graph:
    try:
        return load_graph(_read(path))
    except ParseError as exc:
        raise _InputError(f"{path}: {exc}") from exc


def _q(x) -> str:
    return f"{x.numerator}/{x.denominator}"


def _reverified(G: Graph, partial, rep) -> str:
    """Serialise ``rep`` and check that the text itself is a valid answer."""
    text = repext.dump_representation(rep)
    reparsed = repext.load_partial(G, text).predrawn
    reason = check_extension(G, partial, reparsed)
    if reason is not None:
        raise RuntimeError(f"refusing to print an invalid representation: {reason}")
    return text


def cmd_recognize(args) -> int:
    G = _load_graph(args.graph)
    try:
        rep = repext.recognize(G)
    except NotInterval:
        print("NOT_INTERVAL")
        return EXIT_NO
    sys.stdout.write(_reverified(G, None, rep))
    return EXIT_OK


def _fail(status: str, message: str, as_json: bool) -> int:
    if as_json:
        print(json.dumps({"status": status, "message": message}, sort_keys=True))
    else:
        print(status)
    return EXIT_NO


def cmd_extend(args) -> int:
    G = _load_graph(args.graph)
    text = _read(args.partial)
    try:
        partial = repext.load_partial(G, text, assume_sorted=args.assume_sorted)
    except InvalidPartial as exc:
        return _fail("INVALID_PARTIAL", str(exc), args.json)
    except ParseError as exc:
        raise _InputError(f"{args.partial}: {exc}") from exc
    if not args.assume_sorted and len(partial):
        print(
            "note: sorting the pre-drawn endpoints costs O(k log k); "
            "pass --assume-sorted for input listed by left endpoint",
            file=sys.stderr,
        )
    try:
        ext = repext.extend_detailed(G, partial)
    except NotInterval as exc:
        return _fail("NOT_INTERVAL", str(exc), args.json)
    except NotExtendible as exc:
        return _fail("NOT_EXTENDIBLE", str(exc), args.json)
    out = _reverified(G, partial, ext.representation)
    if args.json:
        rep = ext.representation
        doc = {
            "status": "EXTENDED",
            "representation": [
                {"vertex": v, "left": _q(rep[v].left), "right": _q(rep[v].right)} for v in sorted(rep)
            ],
            "clique_order": [list(ext.cliques[a]) for a in ext.clique_order],
        }
        print(json.dumps(doc, sort_keys=True))
    else:
        sys.stdout.write(out)
    return EXIT_OK


def cmd_simrep(args) -> int:
    try:
        inst = simrep.load_simrep(_read(args.instance))
    except (ParseError, InvalidInstance) as exc:
        raise _InputError(f"{args.instance}: {exc}") from exc
    try:
        reps = simrep.simrep(inst, max_shared=args.max_shared)
    except BoundExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BOUND
    except NoSimRep:
        print("NO_SIMREP")
        return EXIT_NO
    for i, (G, rep) in enumerate(zip(inst.graphs, reps)):
        print(f"graph {i}")
        sys.stdout.write(_reverified(G, None, rep))
    return EXIT_OK


def cmd_selfcheck(args) -> int:
    def report(name, passed, iters):
        status = "ok" if passed == iters else "FAIL"
        print(f"{name}: {passed}/{iters} agree {status}")

    failures = fuzz.run_selfcheck(args.seed, args.iters, report=report)
    for cx in failures:
        print()
        sys.stdout.write(cx.render())
    return EXIT_NO if failures else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="intervalext",
        description="Interval graph recognition and extension of partial representations.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("recognize", help="find an interval representation of a graph")
    p.add_argument("graph", help="graph file ('-' for stdin)")
    p.set_defaults(func=cmd_recognize)

    p = sub.add_parser("extend", help="extend pre-drawn intervals to a full representation")
    p.add_argument("graph", help="graph file")
    p.add_argument("partial", help="pre-drawn intervals, one 'v L R' line each")
    p.add_argument(
        "--assume-sorted",
        action="store_true",
        help="pre-drawn lines are already ordered by left endpoint (checked)",
    )
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.set_defaults(func=cmd_extend)

    p = sub.add_parser("simrep", help="simultaneous representations of graphs sharing vertices")
    p.add_argument("instance", help="instance file")
    p.add_argument(
        "--max-shared",
        type=int,
        default=simrep.DEFAULT_MAX_SHARED,
        help="refuse instances with more shared vertices (default %(default)s)",
    )
    p.set_defaults(func=cmd_simrep)

    p = sub.add_parser("selfcheck", help="compare the solvers with brute force on random instances")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--iters", type=int, default=100, help="instances per suite")
    p.set_defaults(func=cmd_selfcheck)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except IntervalExtError as exc:
        # anything not handled above is still an input problem
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
