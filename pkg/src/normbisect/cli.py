"""Command-line front end.

Exit codes: 0 ok, 2 parse error, 3 invalid input, 4 numerical failure,
5 validation failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .bisector import bisect, classify_pair
from .checks import default_window, validation_report
from .errors import BracketFailure, HeightOutOfRange, NormBisectError
from .io import (
    ProblemParseError,
    classification_document,
    dumps,
    load_problem,
    load_result,
    result_document,
    write_curve_csv,
)
from .oracle import Window

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_INVALID = 3
EXIT_NUMERIC = 4
EXIT_VALIDATION = 5


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_PARSE)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="normbisect", description="Bisectors in normed planes with polygonal unit balls.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("classify", help="strict or non-strict pair")
    c.add_argument("file")
    c.add_argument("--ball-csv", help="read unit-ball vertices from a CSV file")

    b = sub.add_parser("bisect", help="compute the full decomposition")
    b.add_argument("file")
    b.add_argument("--out", required=True, help="result document (JSON)")
    b.add_argument("--svg", help="figure path; any matplotlib format by suffix")
    b.add_argument("--csv", help="curve samples as CSV")
    b.add_argument("--ball-csv")

    v = sub.add_parser("validate", help="compare against the brute-force oracle")
    v.add_argument("file")
    v.add_argument("--grid", nargs=2, type=int, metavar=("NX", "NY"), default=(400, 400))
    v.add_argument("--window", nargs=4, type=float, metavar=("X0", "Y0", "X1", "Y1"))
    v.add_argument("--check-against", help="validate this result document instead of a fresh one")
    v.add_argument("--figure", help="write the oracle sign field with overlays")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--ball-csv")
    return ap


def _classify(args) -> int:
    prob = load_problem(args.file, args.ball_csv)
    cls = classify_pair(prob.ball, prob.p, prob.q, prob.options.tolerance)
    sys.stdout.write(dumps(classification_document(cls)))
    return EXIT_OK


def _bisect(args) -> int:
    prob = load_problem(args.file, args.ball_csv)
    dec = bisect(prob.ball, prob.p, prob.q, prob.options)
    Path(args.out).write_text(dumps(result_document(dec, prob.options.tolerance)), encoding="utf-8")
    if args.csv:
        write_curve_csv(dec, args.csv)
    if args.svg:
        from .plotting import plot_decomposition

        plot_decomposition(dec, prob.ball, args.svg)
    return EXIT_OK


def _validate(args) -> int:
    prob = load_problem(args.file, args.ball_csv)
    fresh = bisect(prob.ball, prob.p, prob.q, prob.options)
    dec = load_result(args.check_against) if args.check_against else fresh
    nx, ny = args.grid
    if nx < 1 or ny < 1:
        raise ProblemParseError("--grid needs at least one cell per axis")
    try:
        window = Window(*args.window) if args.window else default_window(fresh)
    except ValueError as exc:
        raise ProblemParseError(str(exc)) from None
    report = validation_report(prob.ball, dec, fresh, window, nx, ny, seed=args.seed,
                               eps=prob.options.tolerance)
    sys.stdout.write(dumps(report))
    if args.figure:
        from .oracle import extract_zero_set, sign_field
        from .plotting import plot_oracle

        grid = sign_field(prob.ball, prob.p, prob.q, window, nx, ny)
        plot_oracle(grid, extract_zero_set(grid), dec, args.figure)
    return EXIT_OK if report["passed"] else EXIT_VALIDATION


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    handler = {"classify": _classify, "bisect": _bisect, "validate": _validate}[args.command]
    try:
        return handler(args)
    except ProblemParseError as exc:
        print(f"normbisect: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (BracketFailure, HeightOutOfRange) as exc:
        print(f"normbisect: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except NormBisectError as exc:
        print(f"normbisect: invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
