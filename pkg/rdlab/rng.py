# -*- coding: utf-8 -*-
"""
Splittable counter-based randomness.

Every stochastic choice (gamma constants, charts, loops, group sampling)
draws from a numpy Philox generator keyed by the run seed plus a path of
labels, so a subsystem's stream does not depend on how many numbers other
subsystems consumed.
"""
from __future__ import annotations

import zlib
from typing import Union

import numpy as np

Key = Union[str, int]


def _key_to_int(key: Key) -> int:
    if isinstance(key, int):
        if key < 0:
            raise ValueError(f"seed keys must be nonnegative, got {key}")
        return key
    return zlib.crc32(key.encode("utf-8"))


class SeedTree:
    """Node of a deterministic seed hierarchy: SeedTree(0).child("lines", 3).generator()."""

    def __init__(self, seed: int, path: tuple[int, ...] = ()) -> None:
        if seed < 0:
            raise ValueError(f"seed must be nonnegative, got {seed}")
        self.seed = int(seed)
        self.path = tuple(path)

    def child(self, *keys: Key) -> "SeedTree":
        return SeedTree(self.seed, self.path + tuple(_key_to_int(k) for k in keys))

    def generator(self) -> np.random.Generator:
        seq = np.random.SeedSequence(entropy=self.seed, spawn_key=self.path)
        return np.random.Generator(np.random.Philox(seq))

    def __repr__(self) -> str:
        return f"SeedTree(seed={self.seed}, path={self.path})"


def as_generator(rng: Union[int, SeedTree, np.random.Generator, None], *keys: Key) -> np.random.Generator:
    """Accept an int seed, a SeedTree or a ready Generator."""
    if isinstance(rng, np.random.Generator):
        return rng
    if rng is None:
        rng = 0
    tree = rng if isinstance(rng, SeedTree) else SeedTree(int(rng))
    return tree.child(*keys).generator() if keys else tree.generator()


def complex_normal(rng: np.random.Generator, size) -> np.ndarray:
    """Standard complex Gaussian samples."""
    return (rng.standard_normal(size) + 1j * rng.standard_normal(size)) / np.sqrt(2.0)


def random_gamma(rng: np.random.Generator) -> complex:
    """Unit-modulus constant for the gamma trick."""
    return complex(np.exp(2j * np.pi * rng.random()))
