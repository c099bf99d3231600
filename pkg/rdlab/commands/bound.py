# -*- coding: utf-8 -*-
"""
`bound`: resolvent-degree upper bounds.

COMMAND MAP:
- rdlab bound --n N                    best classical bound for the general degree-N polynomial
- rdlab bound --group LABEL            catalogued bound (A5, S7, W(E6), PSL(2,7), C5, ...)
- rdlab bound --generators group.json  Jordan-Hölder bound of a permutation group
- rdlab bound --hamilton R             Hamilton's threshold H(R)
"""
from __future__ import annotations

import argparse

from rdlab.commands.common import resolve_input
from rdlab.errors import InvalidInputError
from rdlab.groups import PermGroup
from rdlab.models import RunConfig
from rdlab.rd_bounds import (
    best_classical_bound,
    brauer_bound,
    brauer_r,
    bring_hamilton_bound,
    group_rd_bound,
    hamilton_H,
    load_catalogue,
)

NAME = "bound"
HELP = "resolvent-degree upper bounds (degree schedules, catalogue, groups)"


def add_arguments(parser: argparse.ArgumentParser) -> None:
    what = parser.add_mutually_exclusive_group(required=True)
    what.add_argument("--n", type=int, help="polynomial degree")
    what.add_argument("--group", help="catalogue label")
    what.add_argument("--generators", help='permutation group JSON {"degree": n, "generators": [[...], ...]}')
    what.add_argument("--hamilton", type=int, metavar="R", help="tabulated threshold H(R), 4 <= R <= 9")


def decode_group(obj) -> PermGroup:
    if not isinstance(obj, dict) or not isinstance(obj.get("generators"), list):
        raise InvalidInputError('group must be an object with a "generators" list of image arrays')
    gens = obj["generators"]
    if not all(isinstance(g, list) and all(isinstance(v, int) for v in g) for g in gens):
        raise InvalidInputError("generators must be arrays of integers")
    degree = obj.get("degree")
    if degree is None and not gens:
        raise InvalidInputError('a group with no generators needs an explicit "degree"')
    return PermGroup.from_images(gens, degree)


def degree_report(n: int) -> dict:
    report = best_classical_bound(n).to_dict()
    schedules = {"bring_hamilton": bring_hamilton_bound(n)}
    if n >= 4:
        schedules["brauer"] = brauer_bound(n)
        schedules["brauer_r"] = brauer_r(n)
    report["schedules"] = schedules
    return report


def run(args: argparse.Namespace, config: RunConfig) -> dict:
    if args.n is not None:
        return degree_report(args.n)
    if args.hamilton is not None:
        return {"r": args.hamilton, "H": hamilton_H(args.hamilton)}
    catalogue = load_catalogue(config.catalogue_path)
    if args.group is not None:
        return group_rd_bound(args.group, catalogue, seed=config.seed).to_dict()
    group = decode_group(resolve_input(args.generators))
    return group_rd_bound(group, catalogue, seed=config.seed).to_dict()
