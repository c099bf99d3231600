# -*- coding: utf-8 -*-
"""Bound catalogue stored as JSON (bundled file or RDLAB_CATALOGUE)."""
from __future__ import annotations

import logging
import re

from rdlab.errors import InvalidInputError
from rdlab.models import BoundCatalogue, CatalogueEntry
from rdlab.repos.base import BaseRepo

logger = logging.getLogger(__name__)

RULES = ("cyclic", "classical-degree")
# citations must name a location, e.g. "§3.1 footnote", "Thm 4.2" or "Cor. 3.5"
LOCATION = re.compile(r"§\s*\d|\b(?:Thm|Theorem|Cor|Corollary|Lemma|Prop|Proposition|Def|Eq|Table)\.?\s*\(?\d")


class CatalogueRepo(BaseRepo):
    """Loads and validates the resolvent-degree bound catalogue."""

    def load(self) -> BoundCatalogue:
        raw = self._read_json()
        if not isinstance(raw, dict) or not isinstance(raw.get("entries"), dict):
            raise InvalidInputError(f"{self.path}: catalogue must be an object with an 'entries' map")
        entries = {}
        for label, item in raw["entries"].items():
            entries[label] = self._parse_entry(label, item)
        logger.debug("loaded %d catalogue entries from %s", len(entries), self.path)
        return BoundCatalogue(entries, self.path)

    def _parse_entry(self, label: str, item: object) -> CatalogueEntry:
        if not isinstance(item, dict):
            raise InvalidInputError(f"catalogue entry {label!r} is not an object")
        citation = item.get("citation")
        if not isinstance(citation, str) or not citation.strip():
            raise InvalidInputError(f"catalogue entry {label!r} has no citation")
        if not LOCATION.search(citation):
            raise InvalidInputError(f"catalogue entry {label!r}: citation {citation!r} names no section, theorem or corollary")
        bound = item.get("bound")
        rule = item.get("rule")
        degree = item.get("degree")
        if rule is not None and rule not in RULES:
            raise InvalidInputError(f"catalogue entry {label!r} has unknown rule {rule!r}")
        if bound is None and rule is None:
            raise InvalidInputError(f"catalogue entry {label!r} needs a bound or a rule")
        if bound is not None and (isinstance(bound, bool) or not isinstance(bound, int) or bound < 1):
            raise InvalidInputError(f"catalogue entry {label!r} has invalid bound {bound!r}")
        if degree is not None and (isinstance(degree, bool) or not isinstance(degree, int) or degree < 2):
            raise InvalidInputError(f"catalogue entry {label!r} has invalid degree {degree!r}")
        return CatalogueEntry(label=label, citation=citation, bound=bound, rule=rule, degree=degree)
