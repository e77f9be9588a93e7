"""Command line entry point.

    lyco run <session-file> [--json out.json] [--jobs N]
             [--cache-dir PATH] [--extend g:minpoly]
             [--certify-field] [--budget-pairs N]

Exit codes: 0 success, 1 usage, 2 session/parse error, 3 resource
budget exhausted, 4 internal certificate failure.
"""

import argparse
import sys

from .cache import install_cache, resolve_cache_dir
from .errors import (
    CertificateFailure,
    DecompositionIncomplete,
    LycoError,
    NegativeHilbertDifference,
    ResourceLimit,
    SessionSyntaxError,
)
from .report import run_session
from .session import extend_session_field, parse_session

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_RESOURCE = 3
EXIT_CERTIFICATE = 4


class _Parser(argparse.ArgumentParser):
    """argparse with the usage exit code pinned to 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser():
    parser = _Parser(
        prog="lyco",
        description=(
            "Connectivity invariants of local cohomology for explicit "
            "ideals: component graphs, the top Lyubeznik-type number, "
            "S2-fication and endomorphism-ring structure."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="run every task of a session file")
    run.add_argument("session", help="path to the session file")
    run.add_argument("--json", metavar="OUT", help="also write the report here")
    run.add_argument(
        "--jobs", type=int, default=1, metavar="N", help="parallel tasks"
    )
    run.add_argument(
        "--cache-dir",
        metavar="PATH",
        help="Groebner cache directory (LYCO_CACHE overrides)",
    )
    run.add_argument(
        "--extend",
        metavar="G:MINPOLY",
        help="extend the base field Q by a generator, e.g. i:i^2+1",
    )
    run.add_argument(
        "--certify-field",
        action="store_true",
        help="assert the declared field splits all top components",
    )
    run.add_argument(
        "--budget-pairs",
        type=int,
        default=None,
        metavar="N",
        help="ceiling on S-pairs per basis computation",
    )
    return parser


def _run(args):
    try:
        with open(args.session, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        print(f"lyco: cannot read session: {e}", file=sys.stderr)
        return EXIT_USAGE

    install_cache(resolve_cache_dir(args.cache_dir))

    try:
        session = parse_session(text)
        if args.extend:
            gen, sep, minpoly = args.extend.partition(":")
            if not sep or not gen.strip() or not minpoly.strip():
                print(
                    "lyco: --extend expects <generator>:<minpoly>, "
                    "e.g. i:i^2+1",
                    file=sys.stderr,
                )
                return EXIT_USAGE
            session = extend_session_field(
                session, gen.strip(), minpoly.strip()
            )
    except SessionSyntaxError as e:
        print(f"lyco: {args.session}: {e}", file=sys.stderr)
        return EXIT_PARSE

    try:
        report = run_session(
            session,
            certify_field=args.certify_field,
            budget=args.budget_pairs,
            jobs=max(1, args.jobs),
        )
    except (CertificateFailure, NegativeHilbertDifference, AssertionError) as e:
        print(f"lyco: certificate failure: {e}", file=sys.stderr)
        return EXIT_CERTIFICATE
    except (ResourceLimit, DecompositionIncomplete) as e:
        print(f"lyco: resource budget exhausted: {e}", file=sys.stderr)
        return EXIT_RESOURCE
    except LycoError as e:
        print(f"lyco: {e}", file=sys.stderr)
        return EXIT_USAGE

    text = report.to_text()
    sys.stdout.write(text)
    if args.json:
        try:
            with open(args.json, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as e:
            print(f"lyco: cannot write {args.json}: {e}", file=sys.stderr)
            return EXIT_USAGE
    return EXIT_OK


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.command == "run":
        return _run(args)
    return EXIT_USAGE  # pragma: no cover - subparser is required


if __name__ == "__main__":
    sys.exit(main())
