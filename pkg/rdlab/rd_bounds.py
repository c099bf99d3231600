# -*- coding: utf-8 -*-
"""
Resolvent-degree upper bounds.

Combines two classical schedules for the general degree-n polynomial:
- Bring-Hamilton: 1 for n <= 5, n - 4 beyond
- Brauer: n - r for n >= (r - 1)! + 1

and a Jordan-Hölder bound for finite groups: the maximum of the catalogued
bounds of the composition factors. Catalogue values live in
rdlab/data/bound_catalogue.json.

All values are upper bounds; `exact` is set only where the bound is known to
be attained (n <= 5, solvable groups).
"""
from __future__ import annotations

import logging
import math
import re
from functools import lru_cache
from typing import Optional, Union

from rdlab.config import BUNDLED_CATALOGUE
from rdlab.errors import InvalidInputError, NoBoundError, UnsupportedError
from rdlab.groups import PermGroup, composition_factors
from rdlab.models import BoundCatalogue, BoundReport
from rdlab.repos import CatalogueRepo

logger = logging.getLogger(__name__)

# Hamilton's thresholds: a degree-n polynomial reduces to n - r parameters
# once n >= H(r).
HAMILTON_H_TABLE = {
    4: 5,
    5: 11,
    6: 47,
    7: 923,
    8: 409619,
    9: 83763206255,
}

RULE_BRING_HAMILTON = "bring-hamilton: RD <= 1 for n <= 5 and RD <= n - 4 for n > 5"
RULE_BRAUER = "brauer: RD <= n - r for n >= (r-1)! + 1"
RULE_SOLVABLE = "solvable: every composition factor is cyclic, solved by radicals"
RULE_JORDAN_HOLDER = "jordan-holder: RD(G) <= max over composition factors"


def bring_hamilton_bound(n: int) -> int:
    """
    Bound from the Bring-Hamilton reduction.

    Args:
        n: Polynomial degree (>= 2)

    Returns:
        1 for n <= 5, otherwise n - 4
    """
    if n < 2:
        raise InvalidInputError(f"bring_hamilton_bound needs n >= 2, got {n}")
    return 1 if n <= 5 else n - 4


def brauer_r(n: int) -> int:
    """Largest r >= 2 with (r - 1)! + 1 <= n."""
    r = 2
    while math.factorial(r) + 1 <= n:
        r += 1
    return r


def brauer_bound(n: int) -> int:
    """
    Brauer's schedule n - r* with r* = max{r >= 2 : (r-1)! + 1 <= n}.

    Args:
        n: Polynomial degree (>= 4)

    Returns:
        n - r*
    """
    if n < 4:
        raise InvalidInputError(f"brauer_bound needs n >= 4, got {n}")
    return n - brauer_r(n)


def best_classical_bound(n: int) -> BoundReport:
    """Minimum of the two schedules; ties go to Bring-Hamilton."""
    bh = bring_hamilton_bound(n)
    bound, rule = bh, RULE_BRING_HAMILTON
    if n >= 4:
        br = brauer_bound(n)
        if br < bh:
            bound, rule = br, f"{RULE_BRAUER} (r = {brauer_r(n)})"
    return BoundReport(subject=f"n={n}", bound=bound, provenance=(rule,), exact=n <= 5)


def hamilton_H(r: int) -> int:
    if r not in HAMILTON_H_TABLE:
        raise UnsupportedError(f"H(r) is tabulated for 4 <= r <= 9, got {r}")
    return HAMILTON_H_TABLE[r]


@lru_cache(maxsize=8)
def load_catalogue(path: str = BUNDLED_CATALOGUE) -> BoundCatalogue:
    return CatalogueRepo(path).load()


_CYCLIC = re.compile(r"^C(\d+)$")
_SYMMETRIC = re.compile(r"^S_?(\d+)$")
_ALTERNATING = re.compile(r"^A_?(\d+)$")


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % k for k in range(2, int(math.isqrt(p)) + 1))


def factor_bound(label: str, catalogue: BoundCatalogue) -> tuple[int, str]:
    """Catalogue bound and citation for one simple factor or catalogued label."""
    entry = catalogue.get(label)
    if entry is not None:
        if entry.bound is not None:
            return entry.bound, f"{label}: {entry.citation}"
        if entry.rule == "classical-degree" and entry.degree is not None:
            return best_classical_bound(entry.degree).bound, f"{label}: {entry.citation}"
    m = _CYCLIC.match(label)
    if m and catalogue.get("C") is not None:
        order = int(m.group(1))
        if _is_prime(order):
            return catalogue.get("C").bound or 1, f"{label}: {catalogue.get('C').citation}"
    for pattern, key in ((_ALTERNATING, "A_n"), (_SYMMETRIC, "S_n")):
        m = pattern.match(label)
        entry = catalogue.get(key)
        if m and entry is not None:
            n = int(m.group(1))
            if n < 2:
                break
            report = best_classical_bound(n)
            return report.bound, f"{label}: {entry.citation} [{report.provenance[0]}]"
    raise NoBoundError(label)


def group_rd_bound(
    subject: Union[PermGroup, str],
    catalogue: Optional[BoundCatalogue] = None,
    seed: int = 0,
) -> BoundReport:
    """
    Jordan-Hölder bound: the maximum catalogued bound over composition factors.

    A label is looked up directly; a PermGroup is decomposed first.
    """
    catalogue = catalogue or load_catalogue()
    if isinstance(subject, str):
        bound, citation = factor_bound(subject, catalogue)
        return BoundReport(subject=subject, bound=bound, provenance=(citation,), exact=_CYCLIC.match(subject) is not None)
    factors = composition_factors(subject, seed=seed)
    name = f"group of order {subject.order()} on {subject.degree} points"
    if all(_CYCLIC.match(f) for f in factors):
        return BoundReport(subject=name, bound=1, provenance=(RULE_SOLVABLE,), exact=True, factors=tuple(factors))
    best = 1
    provenance = [RULE_JORDAN_HOLDER]
    for label in dict.fromkeys(factors):
        if _CYCLIC.match(label):
            continue
        bound, citation = factor_bound(label, catalogue)
        provenance.append(citation)
        best = max(best, bound)
    logger.debug("group bound %d from factors %s", best, factors)
    return BoundReport(subject=name, bound=best, provenance=tuple(provenance), factors=tuple(factors))
