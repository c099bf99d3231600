# -*- coding: utf-8 -*-
"""Shared data models (RunConfig, BoundReport, bound catalogue records)."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional


@dataclass(frozen=True)
class RunConfig:
    command: str
    inputs: tuple = ()
    seed: int = 0
    tol: float = 1e-10
    out: Optional[str] = None
    emit_certificate: bool = False
    threads: int = 1
    catalogue_path: Optional[str] = None

    def __post_init__(self) -> None:
        if not self.tol > 0:
            raise ValueError(f"tolerance must be positive, got {self.tol}")
        if self.seed < 0:
            raise ValueError(f"seed must be nonnegative, got {self.seed}")


@dataclass(frozen=True)
class BoundReport:
    subject: str
    bound: int
    provenance: tuple = ()
    exact: bool = False
    factors: tuple = ()

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "subject": self.subject,
            "bound": self.bound,
            "exact": self.exact,
            "provenance": list(self.provenance),
        }
        if self.factors:
            out["factors"] = list(self.factors)
        return out


@dataclass(frozen=True)
class CatalogueEntry:
    label: str
    citation: str
    bound: Optional[int] = None
    rule: Optional[str] = None
    degree: Optional[int] = None


@dataclass(frozen=True)
class BoundCatalogue:
    entries: dict = field(default_factory=dict)
    source: str = ""

    def get(self, label: str) -> Optional[CatalogueEntry]:
        return self.entries.get(label)

    def __contains__(self, label: str) -> bool:
        return label in self.entries
