"""CLI entry point for the Alexandrov-space calculus."""

import argparse
import logging
import sys
from pathlib import Path

from alexcalc import (
    FMT_MACHINE,
    FMT_TEXT,
    UNKNOWN,
    AlexCalcError,
    Catalog,
    default_catalog,
    double_branched_cover,
    equivalent,
    filling_4d,
    format_catalog,
    format_comparison,
    format_expr,
    format_normal_form,
    format_report,
    graph_of,
    invariant_report,
    normal_form,
    parse_expr,
    parse_piece_cover,
    parse_surgery,
    realize,
    refine_piece,
    selftest,
    surgery_skeleton,
)
from alexcalc.cover import cover_problems, format_piece_cover
from alexcalc.formatter import format_gluings, format_machine
from alexcalc.p2graph import format_adjacency, to_dot
from alexcalc.randomized import DEFAULT_SELFTEST_COUNT
from alexcalc.surgery import format_surgery, validate

logger = logging.getLogger("alexcalc.cli")

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_USAGE = 2


def _parse(text: str, catalog: Catalog):
    """parse_expr, remembering the source so error spans can be underlined."""
    try:
        return parse_expr(text, catalog)
    except AlexCalcError as exc:
        exc.source = text
        raise


def _read(path: str) -> str:
    p = Path(path)
    if not p.exists():
        raise AlexCalcError(f"file not found: {p}")
    return p.read_text(encoding="utf-8")


def _unknown_or(value, render) -> str:
    return "unknown" if value is UNKNOWN else render(value)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_normalize(args, catalog: Catalog) -> int:
    shown = format_normal_form(normal_form(_parse(args.expr, catalog), catalog))
    print(format_machine([("normal_form", shown)]) if args.fmt == FMT_MACHINE else shown)
    return EXIT_OK


def cmd_compare(args, catalog: Catalog) -> int:
    comp = equivalent(_parse(args.left, catalog), _parse(args.right, catalog), catalog)
    print(format_comparison(comp, args.fmt))
    return EXIT_OK


def cmd_invariants(args, catalog: Catalog) -> int:
    print(format_report(invariant_report(_parse(args.expr, catalog), catalog), args.fmt))
    return EXIT_OK


def cmd_graph(args, catalog: Catalog) -> int:
    g = graph_of(_parse(args.expr, catalog), catalog)
    print(_unknown_or(g, to_dot if args.dot else format_adjacency))
    return EXIT_OK


def cmd_cover(args, catalog: Catalog) -> int:
    shown = _unknown_or(double_branched_cover(_parse(args.expr, catalog), catalog), format_expr)
    print(format_machine([("cover", shown)]) if args.fmt == FMT_MACHINE else shown)
    return EXIT_OK


def cmd_verify_cover(args, catalog: Catalog) -> int:
    pc = parse_piece_cover(_read(args.file))
    if args.refine:
        pc = refine_piece(pc, args.refine)
        print(format_piece_cover(pc), end="")
    problems = cover_problems(pc)
    if args.fmt == FMT_MACHINE:
        print(format_machine([("valid", not problems)] + [("problem", p) for p in problems]))
    else:
        print("ok: two-sheeted cover" if not problems else "rejected")
        for p in problems:
            print(f"  - {p}")
    return EXIT_OK if not problems else EXIT_DOMAIN


def cmd_surgery(args, catalog: Catalog) -> int:
    match args.action:
        case "check":
            print(format_surgery(validate(parse_surgery(_read(args.target)))), end="")
        case "realize":
            e = realize(parse_surgery(_read(args.target)), catalog)
            print(format_normal_form(normal_form(e, catalog)))
        case "skeleton":
            print(format_surgery(surgery_skeleton(_parse(args.target, catalog), catalog)), end="")
        case "fill4d":
            recipe = filling_4d(_parse(args.target, catalog), catalog)
            print(
                format_machine(
                    [
                        ("base", recipe.base_4manifold),
                        ("two_handles", recipe.two_handles),
                        ("y_pieces", recipe.y_pieces),
                        ("boundary", format_expr(recipe.boundary_expr)),
                    ]
                )
            )
    return EXIT_OK


def cmd_enumerate_gluings(args, catalog: Catalog) -> int:
    gluings = [(pair, normal_form(e, catalog).as_expr()) for pair, e in catalog.enumerate_gluings()]
    print(format_gluings(gluings, args.fmt))
    return EXIT_OK


def cmd_catalog(args, catalog: Catalog) -> int:
    print(format_catalog(catalog, args.fmt))
    return EXIT_OK


def cmd_selftest(args, catalog: Catalog) -> int:
    result = selftest(args.count, args.seed, catalog)
    for f in result.failures:
        print(f)
    print(f"selftest: {result.count - len(result.failures)}/{result.count} passed (seed {args.seed})")
    return EXIT_OK if result.ok else EXIT_DOMAIN


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="calc", description="Calculus of closed 3D Alexandrov spaces")
    parser.add_argument("--catalog", help="JSON Lines file with extra atoms and blocks")
    parser.add_argument(
        "--format",
        choices=[FMT_TEXT, FMT_MACHINE],
        default=FMT_TEXT,
        dest="fmt",
        help="Output format: text or line-oriented key: value (default: text)",
    )
    parser.add_argument("--seed", type=int, default=0, help="Seed for randomized self-tests (default: 0)")
    parser.add_argument("-v", "--verbose", action="store_true", help="Debug logging on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("normalize", help="Normal prime decomposition of an expression")
    p.add_argument("expr")
    p.set_defaults(handler=cmd_normalize)

    p = sub.add_parser("compare", help="Decide whether two expressions are homeomorphic")
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(handler=cmd_compare)

    p = sub.add_parser("invariants", help="Invariant report of an expression")
    p.add_argument("expr")
    p.set_defaults(handler=cmd_invariants)

    p = sub.add_parser("graph", help="Colored P2-graph of an expression")
    p.add_argument("expr")
    p.add_argument("--dot", action="store_true", help="Emit Graphviz dot instead of adjacency lists")
    p.set_defaults(handler=cmd_graph)

    p = sub.add_parser("cover", help="Double branched cover of a singular expression")
    p.add_argument("expr")
    p.set_defaults(handler=cmd_cover)

    p = sub.add_parser("verify-cover", help="Check a piece-cover description file")
    p.add_argument("file")
    p.add_argument("--refine", metavar="PIECE", help="Split a two-sheeted piece before checking")
    p.set_defaults(handler=cmd_verify_cover)

    p = sub.add_parser("surgery", help="Generalized Dehn surgery descriptions")
    p.add_argument("action", choices=["check", "realize", "skeleton", "fill4d"])
    p.add_argument("target", help="Surgery file for check/realize, expression for skeleton/fill4d")
    p.set_defaults(handler=cmd_surgery)

    p = sub.add_parser("enumerate-gluings", help="All compatible block gluings and their classes")
    p.set_defaults(handler=cmd_enumerate_gluings)

    p = sub.add_parser("catalog", help="List catalog atoms and blocks")
    p.set_defaults(handler=cmd_catalog)

    p = sub.add_parser("selftest", help="Normal-form invariance on seeded random expressions")
    p.add_argument("--count", type=int, default=DEFAULT_SELFTEST_COUNT)
    p.set_defaults(handler=cmd_selftest)
    return parser


def _report_error(exc: AlexCalcError) -> None:
    print(f"error: {exc.message}", file=sys.stderr)
    source = getattr(exc, "source", None)
    if source is not None and exc.span is not None:
        start, end = exc.span
        print(f"  {source}", file=sys.stderr)
        print("  " + " " * start + "^" * max(1, end - start), file=sys.stderr)


def run_command(argv: list[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        catalog = Catalog.load(args.catalog) if args.catalog else default_catalog()
        return args.handler(args, catalog)
    except AlexCalcError as exc:
        _report_error(exc)
        return EXIT_DOMAIN
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(run_command(sys.argv[1:]))
