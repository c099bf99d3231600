# -*- coding: utf-8 -*-
"""Exception hierarchy shared by every pipeline, plus the CLI exit-code map."""
from __future__ import annotations

from typing import Any, Optional

from rdlab.constants import EXIT_INVALID_INPUT, EXIT_NUMERICAL_FAILURE


class RDLabError(Exception):
    """Base for all rdlab errors."""

    exit_code = EXIT_INVALID_INPUT

    def to_dict(self) -> dict[str, Any]:
        return {"error": type(self).__name__, "message": str(self)}


class InvalidInputError(RDLabError, ValueError):
    """Arguments or files that violate a precondition."""


class DegenerateInputError(InvalidInputError):
    """A genericity gate failed. `stage` names the step, `locus` the vanishing condition."""

    def __init__(self, stage: str, locus: str) -> None:
        super().__init__(f"{stage}: degenerate input ({locus})")
        self.stage = stage
        self.locus = locus

    def to_dict(self) -> dict[str, Any]:
        out = super().to_dict()
        out.update(stage=self.stage, locus=self.locus)
        return out


class NumericalFailureError(RDLabError, RuntimeError):
    """Root finder or path tracker could not reach tolerance."""

    exit_code = EXIT_NUMERICAL_FAILURE

    def __init__(self, message: str, diagnostic: Optional[dict[str, Any]] = None) -> None:
        super().__init__(message)
        self.diagnostic = dict(diagnostic or {})

    def to_dict(self) -> dict[str, Any]:
        out = super().to_dict()
        out["diagnostic"] = self.diagnostic
        return out


class ResourceLimitError(RDLabError):
    """A configured budget (group order, lookups, loops) was exceeded."""

    exit_code = EXIT_NUMERICAL_FAILURE


class UnsupportedError(RDLabError):
    """Argument outside a tabulated or implemented range."""


class NoBoundError(RDLabError):
    """A composition factor has no entry in the bound catalogue."""

    def __init__(self, factor: str) -> None:
        super().__init__(f"no catalogued resolvent-degree bound for factor {factor}")
        self.factor = factor
