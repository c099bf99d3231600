# -*- coding: utf-8 -*-
"""
`lines`: the 27 lines of a smooth cubic surface.

COMMAND MAP:
- rdlab lines --input surface.json            direct solve in charts
- rdlab lines --surface fermat|clebsch|random built-in surfaces
- rdlab lines --input S --seed-line line.json complete one known line to 27
- rdlab lines --from-points points.json       labeled lines of a blow-up of 6 points
- --double-sixes                              also list the 36 double-sixes
"""
from __future__ import annotations

import argparse
import logging

from rdlab.commands.common import resolve_input
from rdlab.cubic_lines import (
    CubicSurface,
    LineConfiguration,
    blowup_cubic,
    clebsch_cubic,
    double_sixes,
    fermat_cubic,
    lines_from_one,
    lines_on_cubic,
    random_cubic,
)
from rdlab.errors import InvalidInputError
from rdlab.formats import decode_line, decode_points, decode_surface, encode_line_configuration, encode_surface
from rdlab.models import RunConfig
from rdlab.rng import SeedTree

logger = logging.getLogger(__name__)

NAME = "lines"
HELP = "compute the 27 lines of a cubic surface"

BUILTIN_SURFACES = ("fermat", "clebsch", "random")


def add_arguments(parser: argparse.ArgumentParser) -> None:
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--input", help='surface JSON {"coeffs20": [...]} or "example:NAME"')
    source.add_argument("--surface", choices=BUILTIN_SURFACES)
    source.add_argument("--from-points", help='six points JSON {"points": [[x,y,z] x 6]}')
    parser.add_argument("--seed-line", help='a known line {"plucker": [...]} or {"points": [...]}')
    parser.add_argument("--double-sixes", action="store_true")


def load_surface(args: argparse.Namespace, seed: int) -> CubicSurface:
    if args.surface == "fermat":
        return fermat_cubic()
    if args.surface == "clebsch":
        return clebsch_cubic()
    if args.surface == "random":
        return random_cubic(SeedTree(seed).child("cli", "surface").generator())
    return decode_surface(resolve_input(args.input))


def run(args: argparse.Namespace, config: RunConfig) -> dict:
    if args.from_points:
        if args.seed_line:
            raise InvalidInputError("--seed-line cannot be combined with --from-points")
        points = decode_points(resolve_input(args.from_points), 6, 3)
        surface, cfg = blowup_cubic(points, seed=config.seed)
        method = "blowup"
    else:
        surface = load_surface(args, config.seed)
        if args.seed_line:
            line = decode_line(resolve_input(args.seed_line))
            cfg = lines_from_one(surface, line, seed=config.seed)
            method = "from-one"
        else:
            cfg = lines_on_cubic(surface, seed=config.seed)
            method = "direct"
    logger.info("lines (%s): %d lines", method, len(cfg))
    out = _report(surface, cfg, method)
    if args.double_sixes:
        out["double_sixes"] = [{"first": list(d.first), "second": list(d.second)} for d in double_sixes(cfg)]
    return out


def _report(surface: CubicSurface, cfg: LineConfiguration, method: str) -> dict:
    out = encode_line_configuration(cfg)
    out.update(method=method, count=len(cfg), surface=encode_surface(surface))
    return out
