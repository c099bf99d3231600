# -*- coding: utf-8 -*-
"""
`bitangents`: the 28 bitangents of a smooth plane quartic.

COMMAND MAP:
- rdlab bitangents --input quartic.json                 direct solve in charts
- rdlab bitangents --quartic random                     seeded random quartic
- rdlab bitangents --input Q --two pair.json            complete two known bitangents to 28
- rdlab bitangents --from-cubic surface.json [--point point.json]
                                                        branch quartic of a projection from a surface point
- --classify                                            add Steiner complex / Aronhold set counts
"""
from __future__ import annotations

import argparse
import logging

from rdlab.commands.common import resolve_input
from rdlab.cubic_lines import random_point_on_surface
from rdlab.errors import InvalidInputError
from rdlab.formats import (
    decode_bitangent,
    decode_point,
    decode_quartic,
    decode_surface,
    encode_bitangent,
    encode_quartic,
    encode_value,
)
from rdlab.models import RunConfig
from rdlab.quartic_bitangents import (
    PlaneQuartic,
    bitangents,
    bitangents_from_two,
    classify_configurations,
    quartic_from_cubic_point,
    random_quartic,
)
from rdlab.rng import SeedTree

logger = logging.getLogger(__name__)

NAME = "bitangents"
HELP = "compute the 28 bitangents of a plane quartic"


def add_arguments(parser: argparse.ArgumentParser) -> None:
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--input", help='quartic JSON {"coeffs15": [...]} or "example:NAME"')
    source.add_argument("--quartic", choices=("random",))
    source.add_argument("--from-cubic", help="surface JSON; the quartic is the branch curve of a projection")
    parser.add_argument("--point", help='point on the surface {"point": [x0, x1, x2, x3]} (default: random)')
    parser.add_argument("--two", help='two known bitangents {"bitangents": [{"line": [...]}, {"line": [...]}]}')
    parser.add_argument("--classify", action="store_true")


def _load_two(obj, quartic: PlaneQuartic) -> tuple:
    items = obj.get("bitangents") if isinstance(obj, dict) else None
    if not isinstance(items, list) or len(items) != 2:
        raise InvalidInputError('--two expects {"bitangents": [two records]}')
    return tuple(decode_bitangent(item, quartic) for item in items)


def run(args: argparse.Namespace, config: RunConfig) -> dict:
    tree = SeedTree(config.seed).child("cli")
    out: dict = {}
    if args.from_cubic:
        if args.two:
            raise InvalidInputError("--two cannot be combined with --from-cubic")
        surface = decode_surface(resolve_input(args.from_cubic))
        if args.point:
            point = decode_point(resolve_input(args.point), 4)
        else:
            point = random_point_on_surface(surface, tree.child("point").generator())
        quartic, found = quartic_from_cubic_point(surface, point, seed=config.seed)
        out["point"] = encode_value([complex(v) for v in point])
        method = "from-cubic"
    else:
        if args.point:
            raise InvalidInputError("--point only applies with --from-cubic")
        if args.quartic == "random":
            quartic = random_quartic(tree.child("quartic").generator())
        else:
            quartic = decode_quartic(resolve_input(args.input))
        if args.two:
            t1, t2 = _load_two(resolve_input(args.two), quartic)
            found = bitangents_from_two(quartic, t1, t2, seed=config.seed)
            method = "from-two"
        else:
            found = bitangents(quartic, seed=config.seed)
            method = "direct"
    logger.info("bitangents (%s): %d found", method, len(found))
    out.update(
        method=method,
        count=len(found),
        quartic=encode_quartic(quartic),
        bitangents=[encode_bitangent(b) for b in found],
    )
    if args.classify:
        out["configurations"] = classify_configurations(quartic, found).to_dict()
    return out
