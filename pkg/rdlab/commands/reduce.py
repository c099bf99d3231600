# -*- coding: utf-8 -*-
"""
`reduce`: build a solution tower for a polynomial and print it as JSON.

COMMAND MAP:
- rdlab reduce --input poly.json [--to bring-hamilton|kill-two|depress] [--normalize equal-tail|unit-constant]
"""
from __future__ import annotations

import argparse
import logging

from rdlab.commands.common import resolve_input
from rdlab.constants import NORMALIZE_EQUAL_TAIL, NORMALIZE_UNIT_CONSTANT
from rdlab.formats import decode_polynomial, encode_tower
from rdlab.models import RunConfig
from rdlab.poly import Polynomial
from rdlab.tschirnhaus import SolutionTower, bring_hamilton_reduce, depress_tower, kill_two

logger = logging.getLogger(__name__)

NAME = "reduce"
HELP = "reduce a polynomial to a normal form and emit the solution tower"

TARGET_BRING_HAMILTON = "bring-hamilton"
TARGET_KILL_TWO = "kill-two"
TARGET_DEPRESS = "depress"


def add_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--input", required=True, help='polynomial JSON or "example:NAME"')
    parser.add_argument(
        "--to",
        choices=(TARGET_BRING_HAMILTON, TARGET_KILL_TWO, TARGET_DEPRESS),
        default=TARGET_BRING_HAMILTON,
    )
    parser.add_argument(
        "--normalize",
        choices=(NORMALIZE_EQUAL_TAIL, NORMALIZE_UNIT_CONSTANT),
        default=NORMALIZE_EQUAL_TAIL,
    )


def build_tower(p: Polynomial, to: str, normalize: str = NORMALIZE_EQUAL_TAIL) -> SolutionTower:
    """Tower for the monic form of p; non-monic input is divided by its leading coefficient."""
    p = p.monic()
    if to == TARGET_DEPRESS:
        return depress_tower(p)
    if to == TARGET_KILL_TWO:
        return kill_two(p)[1]
    return bring_hamilton_reduce(p, normalize)[1]


def run(args: argparse.Namespace, config: RunConfig) -> dict:
    p = decode_polynomial(resolve_input(args.input))
    tower = build_tower(p, args.to, args.normalize)
    logger.info("reduced degree %d polynomial in %d steps", p.degree, len(tower.steps))
    return encode_tower(tower)
