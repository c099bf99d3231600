# -*- coding: utf-8 -*-
"""
`solve`: all roots of a polynomial, through a tower or directly.

COMMAND MAP:
- rdlab solve --input poly.json [--method tower|direct] [--normalize ...] [--tol T]
"""
from __future__ import annotations

import argparse
import logging

from rdlab.commands.common import resolve_input
from rdlab.commands.reduce import TARGET_BRING_HAMILTON, TARGET_DEPRESS, TARGET_KILL_TWO, build_tower
from rdlab.constants import NORMALIZE_EQUAL_TAIL, NORMALIZE_UNIT_CONSTANT
from rdlab.formats import decode_polynomial, encode_rootset
from rdlab.models import RunConfig
from rdlab.poly import roots
from rdlab.tschirnhaus import identity_tower, solve_via_tower

logger = logging.getLogger(__name__)

NAME = "solve"
HELP = "solve a polynomial (through its reduction tower, or directly)"

METHOD_TOWER = "tower"
METHOD_DIRECT = "direct"

# tower recovery is checked at this floor even when --tol is tighter
TOWER_TOL_FLOOR = 1e-8


def add_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--input", required=True, help='polynomial JSON or "example:NAME"')
    parser.add_argument("--method", choices=(METHOD_TOWER, METHOD_DIRECT), default=METHOD_TOWER)
    parser.add_argument(
        "--normalize",
        choices=(NORMALIZE_EQUAL_TAIL, NORMALIZE_UNIT_CONSTANT),
        default=NORMALIZE_EQUAL_TAIL,
    )


def _reduction_for(degree: int) -> str:
    if degree >= 5:
        return TARGET_BRING_HAMILTON
    if degree >= 3:
        return TARGET_KILL_TWO
    return TARGET_DEPRESS


def run(args: argparse.Namespace, config: RunConfig) -> dict:
    p = decode_polynomial(resolve_input(args.input))
    if args.method == METHOD_DIRECT:
        rs = roots(p, tol=config.tol)
        return {"method": METHOD_DIRECT, "roots": encode_rootset(rs)}
    if p.degree == 1:
        tower = identity_tower(p.monic())
        reduction = "none"
    else:
        reduction = _reduction_for(p.degree)
        tower = build_tower(p, reduction, args.normalize)
    rs = solve_via_tower(tower, tol=max(config.tol, TOWER_TOL_FLOOR))
    logger.info("solved degree %d through %d tower steps, worst residual %.2e", p.degree, len(tower.steps), rs.max_residual)
    return {"method": METHOD_TOWER, "reduction": reduction, "steps": len(tower.steps), "roots": encode_rootset(rs)}
