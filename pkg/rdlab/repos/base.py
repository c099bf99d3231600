# -*- coding: utf-8 -*-
"""Base repository with shared file path and JSON helpers."""
from __future__ import annotations

import json
from typing import Any

from rdlab.errors import InvalidInputError


class BaseRepo:
    """Base for file-backed repos: shared path and _read_json()."""

    def __init__(self, path: str) -> None:
        self._path = path

    @property
    def path(self) -> str:
        return self._path

    def _read_json(self) -> Any:
        try:
            with open(self._path, "r", encoding="utf-8") as fh:
                return json.load(fh)
        except FileNotFoundError:
            raise InvalidInputError(f"file not found: {self._path}")
        except json.JSONDecodeError as exc:
            raise InvalidInputError(f"{self._path}: invalid JSON ({exc.msg} at line {exc.lineno})")
