# -*- coding: utf-8 -*-
"""
Shared helpers for subcommands.

This module contains:
- common_options(): parent parser with the flags every subcommand accepts
- resolve_input(): file path or bundled "example:NAME" reference
- run_config(): merge parsed flags over Settings into a RunConfig

COMMAND MAP:
- This module does not define subcommands; see COMMAND_MAP.md.
"""
from __future__ import annotations

import argparse
import logging
from typing import Any

from rdlab.config import EXAMPLES_DIR, LOG_LEVELS, Settings
from rdlab.errors import InvalidInputError
from rdlab.formats import load_json
from rdlab.models import RunConfig

logger = logging.getLogger(__name__)

EXAMPLE_PREFIX = "example:"


def _positive_float(raw: str) -> float:
    try:
        value = float(raw)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {raw!r}")
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {raw}")
    return value


def _nonnegative_int(raw: str) -> int:
    try:
        value = int(raw)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {raw!r}")
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {raw}")
    return value


def common_options() -> argparse.ArgumentParser:
    """Flags shared by every subcommand; defaults of None fall back to Settings."""
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--seed", type=_nonnegative_int, default=None, help="run seed (default RDLAB_SEED or 0)")
    parent.add_argument("--tol", type=_positive_float, default=None, help="root residual tolerance")
    parent.add_argument("--out", default=None, help="write JSON here instead of stdout")
    parent.add_argument("--log-level", choices=LOG_LEVELS, type=str.upper, default=None)
    parent.add_argument("--threads", type=int, default=None, help="thread cap (default RDLAB_THREADS)")
    parent.add_argument("--certificate", action="store_true", help="include the full certificate in the output")
    return parent


def run_config(args: argparse.Namespace, settings: Settings) -> RunConfig:
    threads = args.threads if args.threads is not None else settings.threads
    if threads < 1:
        raise InvalidInputError(f"--threads must be >= 1, got {threads}")
    inputs = tuple(v for v in (getattr(args, "input", None), getattr(args, "seed_line", None)) if v)
    return RunConfig(
        command=args.command,
        inputs=inputs,
        seed=args.seed if args.seed is not None else settings.seed,
        tol=args.tol if args.tol is not None else settings.tol,
        out=args.out,
        emit_certificate=args.certificate,
        threads=threads,
        catalogue_path=settings.catalogue_path,
    )


def resolve_input(ref: str) -> Any:
    """Parsed JSON of a file path, or of a bundled example given as "example:NAME"."""
    if ref.startswith(EXAMPLE_PREFIX):
        name = ref[len(EXAMPLE_PREFIX):]
        path = EXAMPLES_DIR / f"{name}.json"
        if not path.is_file():
            known = sorted(p.stem for p in EXAMPLES_DIR.glob("*.json"))
            raise InvalidInputError(f"unknown example {name!r}; bundled: {', '.join(known)}")
        logger.debug("using bundled example %s", path)
        return load_json(str(path))
    return load_json(ref)
