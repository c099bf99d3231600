# -*- coding: utf-8 -*-
"""
`selftest`: reduced-scale acceptance suite with pass/fail per criterion.

COMMAND MAP:
- rdlab selftest [--only NAME ...]
"""
from __future__ import annotations

import argparse

from rdlab.models import RunConfig
from rdlab.selftest import CRITERIA, SelftestContext, run_selftest

NAME = "selftest"
HELP = "run the reduced-scale acceptance suite"


def add_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--only", action="append", choices=list(CRITERIA), help="run only this criterion (repeatable)")


def run(args: argparse.Namespace, config: RunConfig) -> dict:
    ctx = SelftestContext(seed=config.seed, catalogue_path=config.catalogue_path, threads=config.threads)
    return run_selftest(ctx, args.only)
