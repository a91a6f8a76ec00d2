"""Uhusiano: nonschurian separable association schemes of degree 4p²"""

import argparse
import json
import logging
import sys
from typing import Optional

from pydantic import ValidationError

from uhusiano.models.config import CheckName, FusionLevel, RunConfig
from uhusiano.create.create import CreateScheme
from uhusiano.review.review import ReviewScheme
from uhusiano.perms.permutation import SearchBudgetExceeded
from uhusiano.perms.group import regularity_class
from uhusiano.helpers import coreio as _c

logger = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INCONCLUSIVE = 2
EXIT_USAGE = 3


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="uhusiano", description="Nonschurian separable schemes of degree 4p²")
    parser.add_argument("--verbose", action="store_true", help="log search and refinement detail")
    subparsers = parser.add_subparsers(dest="command", required=True)
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--p", type=int, help="prime with 5 <= p <= max_p")
    shared.add_argument("--fusion", choices=[level.value for level in FusionLevel], help="work on one fusion")
    shared.add_argument("--out", dest="directory", help="output directory")
    shared.add_argument("--budget", type=int, help="node budget for every backtracking search")
    shared.add_argument("--override-max-p", action="store_true", default=None, help="allow primes above max_p")
    shared.add_argument("--config", help="TOML run configuration; flags override its values")
    generate = subparsers.add_parser("generate", parents=[shared], help="build and save the scheme artifacts")
    generate.add_argument("--fusions", action="store_true", default=None, help="also save every fusion")
    verify = subparsers.add_parser("verify", parents=[shared], help="run the verification battery")
    verify.add_argument("--lemma", choices=[name.value for name in CheckName], help="run a single stage")
    for command, description in (
        ("aut", "automorphism group of a scheme"),
        ("tensor", "intersection numbers of a scheme"),
        ("wl", "WL stabilization of a colouring"),
    ):
        standalone = subparsers.add_parser(command, parents=[shared], help=description)
        standalone.add_argument("--in", dest="source", help="input scheme file")
    return parser


def _config(args: argparse.Namespace) -> RunConfig:
    """
    Merge the TOML file, if any, with the flags given on the command line.
    """
    terms = dict(_c.load_toml(args.config)) if args.config else {}
    for key in ("p", "fusion", "directory", "budget", "override_max_p", "lemma", "source", "fusions"):
        value = getattr(args, key, None)
        if value is not None:
            terms[key] = value
    return RunConfig(**terms)


def _verify(config: RunConfig) -> int:
    review = ReviewScheme(config)
    report = review.verify()
    for check in report.checks:
        print(f"{'PASS' if check.passed else 'FAIL'} {check.name} {check.detail}".rstrip())
    if report.schurian is not None:
        print(f"nonschurian={str(not report.schurian).lower()}")
    if report.audit_failures is not None:
        print(f"audit failures={report.audit_failures}")
    if report.inconclusive:
        print("INCONCLUSIVE")
        return EXIT_INCONCLUSIVE
    print("PASS" if report.passed else "FAIL")
    return EXIT_PASS if report.passed else EXIT_FAIL


def _run(args: argparse.Namespace) -> int:
    config = _config(args)
    if args.command == "generate":
        work = CreateScheme(config)
        if config.directory is not None:
            work.save()
        print(work.summary())
        return EXIT_PASS
    if args.command == "verify":
        return _verify(config)
    review = ReviewScheme(config)
    if args.command == "aut":
        group = review.save_automorphisms()
        kind = regularity_class(group)
        print(f"order {group.order}, {kind.value}")
        return EXIT_PASS
    if args.command == "tensor":
        tensor = review.save_tensor()
        print(f"rank {tensor.rank}, {len(tensor.entries)} nonzero intersection numbers")
        return EXIT_PASS
    stable, delta = review.stabilize()
    print(f"degree {stable.degree}, rank {stable.rank}, rank delta {delta}")
    return EXIT_PASS


def main(argv: Optional[list[str]] = None) -> int:
    """Main entry point for the script."""
    try:
        args = _parser().parse_args(argv)
    except SystemExit as err:
        return EXIT_USAGE if err.code else EXIT_PASS
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO, format="%(levelname)s %(name)s: %(message)s"
    )
    try:
        return _run(args)
    except SearchBudgetExceeded as err:
        print(f"INCONCLUSIVE: {err}")
        return EXIT_INCONCLUSIVE
    except (ValidationError, ValueError, FileNotFoundError, json.JSONDecodeError, PermissionError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
