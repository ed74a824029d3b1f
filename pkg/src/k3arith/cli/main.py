import argparse
import logging
import math
import os
import sys
from typing import List

from .. import __version__
from ..constants import (
    DEFAULT_PRECISION,
    DEFAULT_SEED,
    DEFAULT_TRUNCATION,
    SEED_ENV_VAR,
)
from ..exceptions import PrecisionError, PreconditionError
from .commands import COMMANDS
from .io import dumps, render
from .selftest import CHECKS, selftest

__all__ = ["main", "run", "build_parser", "EX_OK", "EX_FAILURE", "EX_PRECONDITION", "EX_PRECISION", "EX_USAGE"]

logger = logging.getLogger(__name__)

EX_OK = 0
EX_FAILURE = 1
EX_PRECONDITION = 2
EX_PRECISION = 3
EX_USAGE = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """An argument parser that exits with status 64 on usage errors."""

    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError("{}: error: {}".format(self.prog, message))


def _height(text: str):
    if text.lower() in ("inf", "oo", "infinity"):
        return math.inf
    return int(text)


def _default_seed() -> int:
    value = os.environ.get(SEED_ENV_VAR)
    try:
        return int(value) if value is not None else DEFAULT_SEED
    except ValueError:
        return DEFAULT_SEED


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit machine readable JSON")
    common.add_argument("--input", metavar="PATH", help="JSON input file, '-' for stdin")
    common.add_argument("--precision", type=int, default=DEFAULT_PRECISION, help="p-adic digits")
    common.add_argument("--trunc", type=int, default=DEFAULT_TRUNCATION, help="series truncation degree")
    common.add_argument(
        "--seed", type=int, default=_default_seed(), help="seed of random trials (env {})".format(SEED_ENV_VAR)
    )
    common.add_argument("--trials", type=int, default=5, help="number of random trials")
    common.add_argument("--workers", type=int, default=1, help="threads for independent trials")
    common.add_argument("--verbose", action="store_true", help="log debug messages")
    common.add_argument("inline", nargs="?", default=None, help="inline JSON input")
    return common


def _options(parser: argparse.ArgumentParser, group: str, name: str):
    if group == "lattice":
        parser.add_argument("--name", help="a standard lattice, e.g. U, E8, K3, L, Ltilde")
        parser.add_argument("--d", type=int)
        parser.add_argument("--p", type=int)
    elif group == "clifford":
        parser.add_argument("--name", help="a standard lattice")
        parser.add_argument("--d", type=int)
        parser.add_argument("--p", type=int)
        parser.add_argument("--vector", help="an isotropic vector, comma separated")
    elif group == "crystal":
        parser.add_argument("--h", type=_height, help="height, or 'inf'")
        parser.add_argument("--p", type=int)
        parser.add_argument("--s", default="1", help="breakpoint slope of decompose")
        parser.add_argument("--hodge-compatible", action="store_true")
    elif group == "fgl":
        parser.add_argument("--kind", choices=["honda", "multiplicative", "additive"])
        parser.add_argument("--h", type=int)
        parser.add_argument("--p", type=int)
        parser.add_argument("--a", type=int, default=1, help="degree of the residue field")
        parser.add_argument(
            "--verify-degree", type=int, help="check identities only up to this degree (default trunc - 1)"
        )


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="k3arith", description="Exact arithmetic around K3 surfaces.")
    parser.add_argument("--version", action="version", version=__version__)
    groups = parser.add_subparsers(dest="group", metavar="command", parser_class=_Parser)
    groups.required = True
    for group, commands in COMMANDS.items():
        gp = groups.add_parser(group, help="{} commands".format(group))
        subs = gp.add_subparsers(dest="command", metavar="subcommand", parser_class=_Parser)
        subs.required = True
        for name in commands:
            sp = subs.add_parser(name, parents=[common])
            _options(sp, group, name)
    st = groups.add_parser("selftest", parents=[common], help="run the invariant suite")
    st.add_argument("--only", action="append", choices=list(CHECKS), help="run selected checks")
    st.add_argument("--full", action="store_true", help="cover the whole acceptance ranges")
    return parser


def run(argv: List[str] = None) -> int:
    """
    Runs the command line and returns the exit status: 0 on success, 1 on
    failed self-tests or unexpected errors, 2 on violated preconditions,
    3 on insufficient precision and 64 on usage errors.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        print(e, file=sys.stderr)
        return EX_USAGE
    except SystemExit as e:
        return EX_OK if e.code in (None, 0) else EX_USAGE

    if args.verbose:
        logging.basicConfig(level=logging.DEBUG, format="%(levelname)s %(name)s: %(message)s")

    try:
        if args.group == "selftest":
            report = selftest(args.seed, args.trials, args.workers, args.only, args.full)
            code = EX_OK if report["passed"] else EX_FAILURE
        else:
            report = COMMANDS[args.group][args.command](args)
            code = EX_OK
    except PreconditionError as e:
        print("error: {}".format(e), file=sys.stderr)
        return EX_PRECONDITION
    except PrecisionError as e:
        print("error: {}".format(e), file=sys.stderr)
        return EX_PRECISION
    except Exception as e:
        logger.error("unexpected error: %s", e, exc_info=True)
        return EX_FAILURE

    print(dumps(report) if args.json else render(report))
    if code != EX_OK and args.group == "selftest":
        for r in report["reproducers"]:
            print(
                "reproduce: k3arith selftest --only {} --seed {} --trials {}{}".format(
                    r["check"], r["seed"], r["trial"] + 1, " --full" if args.full else ""
                ),
                file=sys.stderr,
            )
    return code


def main() -> None:
    sys.exit(run())
