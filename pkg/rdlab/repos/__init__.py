# -*- coding: utf-8 -*-
"""File-backed repositories."""

from rdlab.repos.base import BaseRepo
from rdlab.repos.catalogue_repo import CatalogueRepo

__all__ = [
    "BaseRepo",
    "CatalogueRepo",
]
