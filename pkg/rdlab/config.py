# -*- coding: utf-8 -*-
"""
Runtime settings read from the environment (and a local .env file).

CLI flags override these values; see rdlab.main.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path

from dotenv import load_dotenv

load_dotenv()

DATA_DIR = Path(__file__).resolve().parent / "data"
BUNDLED_CATALOGUE = str(DATA_DIR / "bound_catalogue.json")
EXAMPLES_DIR = DATA_DIR / "examples"

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


@dataclass(frozen=True)
class Settings:
    threads: int = 1
    seed: int = 0
    tol: float = 1e-10
    catalogue_path: str = BUNDLED_CATALOGUE
    log_level: str = "WARNING"


def _int_env(name: str, default: int, minimum: int | None = None) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise RuntimeError(f"{name} must be an integer, got {raw!r}.")
    if minimum is not None and value < minimum:
        raise RuntimeError(f"{name} must be >= {minimum}, got {value}.")
    return value


def load_settings() -> Settings:
    threads = _int_env("RDLAB_THREADS", 1, minimum=1)
    seed = _int_env("RDLAB_SEED", 0, minimum=0)
    raw_tol = os.getenv("RDLAB_TOL") or ""
    try:
        tol = float(raw_tol) if raw_tol.strip() else 1e-10
    except ValueError:
        raise RuntimeError(f"RDLAB_TOL must be a number, got {raw_tol!r}.")
    if not tol > 0:
        raise RuntimeError(f"RDLAB_TOL must be positive, got {tol}.")
    catalogue = os.getenv("RDLAB_CATALOGUE") or BUNDLED_CATALOGUE
    log_level = (os.getenv("RDLAB_LOG_LEVEL") or "WARNING").upper()
    if log_level not in LOG_LEVELS:
        raise RuntimeError(f"RDLAB_LOG_LEVEL must be one of {', '.join(LOG_LEVELS)}, got {log_level!r}.")
    return Settings(threads=threads, seed=seed, tol=tol, catalogue_path=catalogue, log_level=log_level)
