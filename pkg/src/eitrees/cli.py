"""Command-line front end.

Subcommands::

    eitrees check FILE...             edge connectivity and a minimum cut
    eitrees trees FILE                four edge-independent spanning trees
    eitrees generate --seed S --ops N random 4-edge-connected edge list
    eitrees verify FILE TREES         check a tree certificate

Exit codes: 0 success, 1 the graph or certificate fails the property,
2 bad input, 3 internal invariant failure (a bug).
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .chains import format_decomposition
from .connectivity import edge_connectivity
from .errors import InvariantError, NotFourEdgeConnected
from .io import EdgeListError, format_edge_list, parse_edge_list, to_dot
from .mader import random_4ec
from .numbering import format_numbering, format_trees, parse_trees, verify_independence
from .pipeline import independent_trees

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUG = 0, 1, 2, 3
SEED_ENV = "EITREES_SEED"


class _Out:
    def __init__(self, quiet: bool):
        self.quiet = quiet

    def report(self, msg: str) -> None:
        if not self.quiet:
            print(msg)

    def error(self, msg: str) -> None:
        print(f"eitrees: {msg}", file=sys.stderr)


def _read_graph(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise EdgeListError(None, f"cannot read {path}: {exc.strerror}") from None
    try:
        return parse_edge_list(text)
    except EdgeListError as exc:
        raise EdgeListError(None, f"{path}: {exc}") from None


def _write(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _fmt_cut(cut) -> str:
    return ",".join(map(str, sorted(cut)))


def _check_one(path: str) -> tuple[int, list[str]]:
    try:
        g, _ = _read_graph(path)
    except EdgeListError as exc:
        return EXIT_INPUT, [f"error: {exc}"]
    if g.number_of_vertices() < 2:
        return EXIT_INPUT, [f"error: {path}: need at least two vertices"]
    rep = edge_connectivity(g)
    lines = [f"lambda={rep.value}", f"cut={_fmt_cut(rep.witness_cut)}"]
    return (EXIT_OK if rep.value >= 4 else EXIT_FAIL), lines


def cmd_check(args: argparse.Namespace, out: _Out) -> int:
    paths = args.files
    if args.jobs > 1 and len(paths) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_check_one, paths))
    else:
        results = [_check_one(p) for p in paths]
    code = EXIT_OK
    for path, (rc, lines) in zip(paths, results):
        prefix = f"{path}: " if len(paths) > 1 else ""
        for line in lines:
            if line.startswith("error: "):
                out.error(line[len("error: "):])
            else:
                out.report(prefix + line)
        code = max(code, rc)
    return code


def cmd_trees(args: argparse.Namespace, out: _Out) -> int:
    try:
        g, root = _read_graph(args.file)
    except EdgeListError as exc:
        out.error(str(exc))
        return EXIT_INPUT
    if g.number_of_vertices() < 2:
        out.error("need at least two vertices")
        return EXIT_INPUT
    try:
        res = independent_trees(g, root, check=args.check)
    except NotFourEdgeConnected as exc:
        out.report(f"not 4-edge-connected: lambda={exc.value}")
        out.report(f"cut={_fmt_cut(exc.cut)}")
        return EXIT_FAIL
    except InvariantError as exc:
        out.error(f"internal invariant failed: {exc}")
        return EXIT_BUG
    try:
        if args.emit_chains:
            _write(args.emit_chains, format_decomposition(res.decomposition))
        if args.emit_numbering:
            _write(args.emit_numbering, format_numbering(res.f, "f") + format_numbering(res.g, "g"))
        if args.dot:
            _write(args.dot, to_dot(res.graph, root, res.trees, res.loopless))
        _write(args.output, format_trees(res.trees))
    except OSError as exc:
        out.error(f"cannot write output: {exc}")
        return EXIT_INPUT
    if not res.report.ok:
        out.error(f"trees failed verification:\n{res.report}")
        return EXIT_BUG
    if args.output != "-":
        out.report(f"verified: ok ({len(res.sequence.ops)} construction ops)")
    return EXIT_OK


def cmd_generate(args: argparse.Namespace, out: _Out) -> int:
    seed = args.seed
    if seed is None:
        raw = os.environ.get(SEED_ENV, "0")
        try:
            seed = int(raw)
        except ValueError:
            out.error(f"{SEED_ENV}={raw!r} is not an integer")
            return EXIT_INPUT
    if args.ops < 0:
        out.error("--ops must be non-negative")
        return EXIT_INPUT
    g, seq = random_4ec(seed, args.ops, args.pinch_bias)
    try:
        _write(args.output, format_edge_list(g, seq.root))
    except OSError as exc:
        out.error(f"cannot write {args.output}: {exc.strerror}")
        return EXIT_INPUT
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, out: _Out) -> int:
    try:
        g, root = _read_graph(args.graph)
        trees_text = Path(args.trees).read_text()
        t = parse_trees(trees_text, root)
    except OSError as exc:
        out.error(f"cannot read {args.trees}: {exc.strerror}")
        return EXIT_INPUT
    except ValueError as exc:
        out.error(str(exc))
        return EXIT_INPUT
    dangling = sorted({e for p in t.parents for e in p.values() if not g.has_edge(e)})
    if dangling:
        out.error(f"tree file references unknown edges {dangling}")
        return EXIT_INPUT
    rep = verify_independence(g, root, t)
    if rep.ok:
        out.report("ok")
        return EXIT_OK
    out.report(str(rep))
    return EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="eitrees", description="Four edge-independent spanning trees.")
    p.add_argument("-q", "--quiet", action="store_true", help="suppress reports")
    # also accepted after the subcommand; SUPPRESS keeps the top-level value
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-q", "--quiet", action="store_true", default=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", parents=[common], help="edge connectivity with a witness cut")
    c.add_argument("files", nargs="+")
    c.add_argument("--jobs", type=int, default=1, help="check files in parallel")
    c.set_defaults(func=cmd_check)

    t = sub.add_parser("trees", parents=[common], help="build and verify four trees")
    t.add_argument("file")
    t.add_argument("-o", "--output", default="-", help="tree file (default stdout)")
    t.add_argument("--emit-chains", metavar="PATH", help="write the chain decomposition")
    t.add_argument("--emit-numbering", metavar="PATH", help="write the f and g numberings")
    t.add_argument("--dot", metavar="PATH", help="write Graphviz source")
    t.add_argument("--check", action="store_true", help="re-check global connectivity after every extraction step")
    t.set_defaults(func=cmd_trees)

    gen = sub.add_parser("generate", parents=[common], help="random 4-edge-connected graph")
    gen.add_argument("--seed", type=int, default=None, help=f"default: ${SEED_ENV} or 0")
    gen.add_argument("--ops", type=int, default=20, help="number of construction ops")
    gen.add_argument("--pinch-bias", type=float, default=0.7)
    gen.add_argument("-o", "--output", default="-")
    gen.set_defaults(func=cmd_generate)

    v = sub.add_parser("verify", parents=[common], help="check a tree certificate")
    v.add_argument("graph")
    v.add_argument("trees")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    return args.func(args, _Out(args.quiet))


if __name__ == "__main__":
    sys.exit(main())
