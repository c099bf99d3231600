# -*- coding: utf-8 -*-
"""
Command-line entry point: python -m rdlab <subcommand> [flags].

JSON results go to stdout (or --out), logs go to stderr. Exit codes:
0 success, 2 invalid input, 3 numerical failure or exhausted budget
(a diagnostic JSON object is printed), 64 usage errors.
"""
from __future__ import annotations

import argparse
import logging
import sys
from typing import Optional, Sequence

from rdlab.commands import COMMANDS
from rdlab.commands.common import common_options, run_config
from rdlab.config import load_settings
from rdlab.constants import EXIT_INVALID_INPUT, EXIT_NUMERICAL_FAILURE, EXIT_OK, EXIT_USAGE
from rdlab.errors import RDLabError
from rdlab.formats import dumps, write_output

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - [PID:%(process)d] - %(message)s"


class UsageParser(argparse.ArgumentParser):
    """ArgumentParser whose usage errors exit with EXIT_USAGE instead of 2."""

    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = UsageParser(prog="rdlab", description="Resolvent-degree laboratory: reductions, bounds, lines, bitangents, monodromy.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)
    parent = common_options()
    for name, module in COMMANDS.items():
        module.add_arguments(sub.add_parser(name, help=module.HELP, parents=[parent]))
    return parser


def setup_logging(level: str) -> None:
    logging.basicConfig(level=getattr(logging, level), format=LOG_FORMAT, stream=sys.stderr, force=True)


def _emit_error(payload: dict) -> None:
    sys.stdout.write(dumps(payload))


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        settings = load_settings()
    except RuntimeError as exc:
        _emit_error({"error": "ConfigurationError", "message": str(exc)})
        return EXIT_INVALID_INPUT

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_USAGE

    setup_logging(args.log_level or settings.log_level)
    try:
        config = run_config(args, settings)
        logger.info("rdlab %s (seed %d, tol %.1e, threads %d)", config.command, config.seed, config.tol, config.threads)
        result = COMMANDS[args.command].run(args, config)
        write_output(result, config.out)
    except RDLabError as exc:
        logger.error("%s failed: %s", args.command, exc)
        _emit_error(exc.to_dict())
        return exc.exit_code
    except ValueError as exc:
        logger.error("%s failed: %s", args.command, exc)
        _emit_error({"error": type(exc).__name__, "message": str(exc)})
        return EXIT_INVALID_INPUT
    except Exception as exc:
        logger.error("%s crashed", args.command, exc_info=True)
        _emit_error({"error": type(exc).__name__, "message": str(exc)})
        return EXIT_NUMERICAL_FAILURE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
