# -*- coding: utf-8 -*-
"""
`count`: enumerative numbers attached to the covers.

COMMAND MAP:
- rdlab count --kontsevich D     rational degree-D plane curves through 3D - 1 points
- rdlab count --flexes D         flexes of a smooth plane curve of degree D
- rdlab count --bezout R,S       intersection points of two plane curves
- rdlab count --hexahedral       degrees of the hexahedral-form covers
"""
from __future__ import annotations

import argparse

from rdlab.errors import InvalidInputError
from rdlab.models import RunConfig
from rdlab.monodromy import bezout_count, flex_count, hexahedral_degrees, kontsevich_nd

NAME = "count"
HELP = "enumerative counts (Kontsevich, flexes, Bezout, hexahedral covers)"


def add_arguments(parser: argparse.ArgumentParser) -> None:
    what = parser.add_mutually_exclusive_group(required=True)
    what.add_argument("--kontsevich", type=int, metavar="D")
    what.add_argument("--flexes", type=int, metavar="D")
    what.add_argument("--bezout", metavar="R,S")
    what.add_argument("--hexahedral", action="store_true")


def _pair(raw: str) -> tuple[int, int]:
    try:
        r, s = (int(v) for v in raw.split(","))
    except ValueError:
        raise InvalidInputError(f"--bezout expects R,S, got {raw!r}")
    return r, s


def run(args: argparse.Namespace, config: RunConfig) -> dict:
    if args.kontsevich is not None:
        return {"count": "kontsevich", "d": args.kontsevich, "value": kontsevich_nd(args.kontsevich)}
    if args.flexes is not None:
        return {"count": "flexes", "d": args.flexes, "value": flex_count(args.flexes)}
    if args.bezout is not None:
        r, s = _pair(args.bezout)
        return {"count": "bezout", "degrees": [r, s], "value": bezout_count(r, s)}
    return {"count": "hexahedral", "value": hexahedral_degrees()}
