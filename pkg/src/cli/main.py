"""
Entry point for the nlie command line.

Exit codes: 0 success, 1 semantic failure (validation, decomposability,
search or extraction failure), 2 malformed or unreadable document, 3
internal inconsistency.
"""

import argparse
import logging
import sys
from typing import List, Optional

from src.cli.commands import (
    CONSTRUCT_KINDS,
    cmd_analyze,
    cmd_check,
    cmd_construct,
    cmd_decompose,
    cmd_extract,
    parse_signs,
    status,
)
from src.utils.config import get_settings
from src.utils.errors import DocumentError, InconsistencyError, NLieError

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_DOCUMENT = 2
EXIT_INCONSISTENT = 3


def _signs(text: str) -> List[int]:
    try:
        return parse_signs(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def build_parser(default_seed: int = 0) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nlie",
        description="Exact tools for metric Lie n-algebras.",
    )
    parser.add_argument("--verbose", "-v", action="store_true", help="log at DEBUG level")
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="verify n-Jacobi and metric invariance")
    check.add_argument("file")

    analyze = sub.add_parser("analyze", help="centre, derived series, signature, decomposition")
    analyze.add_argument("file")
    analyze.add_argument("--seed", type=int, default=default_seed)
    analyze.add_argument("--json", action="store_true", help="print the report as JSON")

    construct = sub.add_parser("construct", help="build an algebra and write it as nlie/1")
    construct.add_argument("kind", choices=CONSTRUCT_KINDS)
    construct.add_argument("inputs", nargs="*", help="input files for dsum / coadjoint")
    construct.add_argument("--n", type=int, help="arity for simple / abelian")
    construct.add_argument("--signs", type=_signs, help="sign string such as +++-")
    construct.add_argument("--data", help="extension data file for dext1 / dextgen")
    construct.add_argument("--output", "-o", help="output file (default: stdout)")

    decompose = sub.add_parser("decompose", help="orthogonal decomposition into indecomposables")
    decompose.add_argument("file")
    decompose.add_argument("--seed", type=int, default=default_seed)

    extract = sub.add_parser("extract", help="read double-extension data off an indecomposable")
    extract.add_argument("file")
    extract.add_argument("--seed", type=int, default=default_seed)
    extract.add_argument("--output", "-o", help="output file (default: stdout)")
    return parser


def _check_construct_args(parser: argparse.ArgumentParser, args: argparse.Namespace) -> None:
    kind = args.kind
    if kind in ("simple", "abelian") and (args.n is None or args.signs is None):
        parser.error(f"construct {kind} needs --n and --signs")
    if kind == "dsum" and len(args.inputs) != 2:
        parser.error("construct dsum needs two input files")
    if kind == "coadjoint" and len(args.inputs) != 1:
        parser.error("construct coadjoint needs one input file")
    if kind in ("dext1", "dextgen") and args.data is None:
        parser.error(f"construct {kind} needs --data")


def _dispatch(parser: argparse.ArgumentParser, args: argparse.Namespace, jobs: int) -> int:
    if args.command == "check":
        return cmd_check(args.file, jobs=jobs)
    if args.command == "analyze":
        return cmd_analyze(args.file, seed=args.seed, as_json=args.json)
    if args.command == "construct":
        _check_construct_args(parser, args)
        return cmd_construct(
            args.kind, n=args.n, signs=args.signs, inputs=args.inputs,
            data=args.data, output=args.output,
        )
    if args.command == "decompose":
        return cmd_decompose(args.file, seed=args.seed)
    return cmd_extract(args.file, seed=args.seed, output=args.output)


def main(argv: Optional[List[str]] = None) -> int:
    try:
        settings = get_settings()
    except NLieError as e:
        status("ERROR", str(e))
        return EXIT_FAILURE
    parser = build_parser(settings.seed)
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else settings.log_level,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return _dispatch(parser, args, settings.jobs)
    except DocumentError as e:
        status("ERROR", f"{getattr(args, 'file', None) or 'input'}: {e}")
        return EXIT_DOCUMENT
    except InconsistencyError as e:
        status("ERROR", f"internal inconsistency: {e}")
        return EXIT_INCONSISTENT
    except NLieError as e:
        status("ERROR", str(e))
        report = getattr(e, "report", None)
        if report is not None:
            for line in report.lines():
                print(f"  {line}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
