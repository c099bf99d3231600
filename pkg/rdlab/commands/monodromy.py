# -*- coding: utf-8 -*-
"""
`monodromy`: numerical monodromy group of a named family.

COMMAND MAP:
- rdlab monodromy --family lines27|bitangents28|bezout:R,S|flex:D [--loops N] [--radius R] [--certificate]
"""
from __future__ import annotations

import argparse
import logging

from rdlab.constants import DEFAULT_LOOP_RADIUS
from rdlab.errors import InvalidInputError
from rdlab.models import RunConfig
from rdlab.monodromy import LOOP_ACCEPTED, MonodromyCertificate, family_from_spec, monodromy_group

logger = logging.getLogger(__name__)

NAME = "monodromy"
HELP = "certify the monodromy group of a family by tracking random loops"


def add_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--family", required=True, help="lines27, bitangents28, bezout:R,S or flex:D")
    parser.add_argument("--loops", type=int, default=50, help="accepted loops to aim for (default 50)")
    parser.add_argument("--radius", type=float, default=DEFAULT_LOOP_RADIUS, help="relative loop radius")


def summary(cert: MonodromyCertificate) -> dict:
    accepted = sum(1 for loop in cert.loops if loop.status == LOOP_ACCEPTED)
    return {
        "family": cert.family,
        "seed": cert.seed,
        "fiber_degree": cert.fiber_degree,
        "fiber_size": len(cert.fiber),
        "order": cert.order,
        "solvable": cert.solvable,
        "derived_series": list(cert.derived_orders),
        "target_order": cert.target_order,
        "reached_target": cert.reached_target,
        "loops_accepted": accepted,
        "loops_attempted": len(cert.loops),
        "complete": cert.complete,
        "stop_reason": cert.stop_reason,
    }


def run(args: argparse.Namespace, config: RunConfig) -> dict:
    if args.loops < 1:
        raise InvalidInputError(f"--loops must be >= 1, got {args.loops}")
    if not args.radius > 0:
        raise InvalidInputError(f"--radius must be positive, got {args.radius}")
    family = family_from_spec(args.family)
    cert = monodromy_group(family, loops=args.loops, seed=config.seed, threads=config.threads, radius=args.radius)
    logger.info("monodromy %s: order %d after %d loops (%s)", cert.family, cert.order, len(cert.loops), cert.stop_reason)
    out = summary(cert)
    if config.emit_certificate:
        out["certificate"] = cert.to_dict()
    return out
