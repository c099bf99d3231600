# -*- coding: utf-8 -*-
"""
Permutation groups: Schreier-Sims, derived series, normal closure and
composition factors for the groups that show up in the pipelines.

Convention: a Perm is its image tuple, and products act left to right,
(p * q)[i] = q[p[i]].
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from itertools import chain, combinations
from typing import Iterable, Optional, Sequence

import numpy as np

from rdlab.constants import (
    GROUP_ORDER_BUDGET,
    LABEL_PSL27,
    LABEL_WE6_PLUS,
    LABEL_WE7_PLUS,
    ORDER_WE6_PLUS,
    ORDER_WE7_PLUS,
    SIMPLICITY_SAMPLES,
)
from rdlab.errors import InvalidInputError, ResourceLimitError
from rdlab.rng import as_generator

logger = logging.getLogger(__name__)


class Perm:
    """Bijection of {0, ..., d-1} stored as an image tuple."""

    __slots__ = ("images",)

    def __init__(self, images: Iterable[int]) -> None:
        imgs = tuple(int(i) for i in images)
        if sorted(imgs) != list(range(len(imgs))):
            raise InvalidInputError(f"not a permutation: {imgs}")
        self.images = imgs

    @classmethod
    def identity(cls, degree: int) -> "Perm":
        return cls(range(degree))

    @classmethod
    def from_cycles(cls, degree: int, cycles: Sequence[Sequence[int]]) -> "Perm":
        """Product of the given cycles, applied in order."""
        out = cls.identity(degree)
        for cyc in cycles:
            imgs = list(range(degree))
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                if not 0 <= a < degree:
                    raise InvalidInputError(f"point {a} outside degree {degree}")
                imgs[a] = b
            out = out * cls(imgs)
        return out

    @property
    def degree(self) -> int:
        return len(self.images)

    def __getitem__(self, i: int) -> int:
        return self.images[i]

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: "Perm") -> "Perm":
        q = other.images
        return Perm._wrap(tuple(q[i] for i in self.images))

    def inverse(self) -> "Perm":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Perm._wrap(tuple(inv))

    def __pow__(self, k: int) -> "Perm":
        base = self if k >= 0 else self.inverse()
        out = Perm.identity(self.degree)
        for _ in range(abs(k)):
            out = out * base
        return out

    @classmethod
    def _wrap(cls, images: tuple) -> "Perm":
        p = object.__new__(cls)
        p.images = images
        return p

    @property
    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for i in range(len(self.images)):
            if i in seen or self.images[i] == i:
                continue
            cyc = [i]
            seen.add(i)
            j = self.images[i]
            while j != i:
                cyc.append(j)
                seen.add(j)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        lengths = [len(c) for c in self.cycles()]
        fixed = self.degree - sum(lengths)
        return tuple(sorted(lengths + [1] * fixed, reverse=True))

    @property
    def sign(self) -> int:
        return -1 if sum(len(c) - 1 for c in self.cycles()) % 2 else 1

    def order(self) -> int:
        return math.lcm(*[len(c) for c in self.cycles()]) if self.cycles() else 1

    def moved_point(self) -> Optional[int]:
        return next((i for i, j in enumerate(self.images) if i != j), None)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Perm) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return f"Perm(id, degree={self.degree})"
        return "Perm(" + "".join("(" + " ".join(map(str, c)) + ")" for c in cyc) + ")"


def commutator(a: Perm, b: Perm) -> Perm:
    return a.inverse() * b.inverse() * a * b


@dataclass
class _Level:
    base: int
    gens: list = field(default_factory=list)
    trans: dict = field(default_factory=dict)
    tested: set = field(default_factory=set)

    def extend_orbit(self, degree: int) -> None:
        if not self.trans:
            self.trans[self.base] = Perm.identity(degree)
        queue = list(self.trans)
        k = 0
        while k < len(queue):
            pt = queue[k]
            k += 1
            u = self.trans[pt]
            for g in self.gens:
                img = g[pt]
                if img not in self.trans:
                    self.trans[img] = u * g
                    queue.append(img)


class StabilizerChain:
    """Incremental deterministic Schreier-Sims with memoized Schreier generators."""

    def __init__(self, degree: int) -> None:
        self.degree = degree
        self.levels: list[_Level] = []

    def sift(self, g: Perm, start: int = 0) -> tuple[Perm, int]:
        for idx in range(start, len(self.levels)):
            level = self.levels[idx]
            b = g[level.base]
            rep = level.trans.get(b)
            if rep is None:
                return g, idx
            g = g * rep.inverse()
        return g, len(self.levels)

    def _place(self, h: Perm, lo: int, hi: int) -> None:
        """Add h as a strong generator of levels lo..hi, opening level hi if needed."""
        if hi == len(self.levels):
            self.levels.append(_Level(h.moved_point()))
        for idx in range(lo, hi + 1):
            self.levels[idx].gens.append(h)
            self.levels[idx].extend_orbit(self.degree)

    def insert(self, g: Perm) -> bool:
        """Extend the group by g; returns False when g was already a member."""
        h, j = self.sift(g)
        if h.is_identity:
            return False
        self._place(h, 0, j)
        self._close(j)
        return True

    def _close(self, start: int) -> None:
        i = start
        while i >= 0:
            level = self.levels[i]
            found = None
            for pt in list(level.trans):
                u = level.trans[pt]
                for gi, g in enumerate(level.gens):
                    if (pt, gi) in level.tested:
                        continue
                    level.tested.add((pt, gi))
                    img = g[pt]
                    s = u * g * level.trans[img].inverse()
                    if s.is_identity:
                        continue
                    h, j = self.sift(s, i + 1)
                    if not h.is_identity:
                        found = (h, j)
                        break
                if found:
                    break
            if found is None:
                i -= 1
                continue
            h, j = found
            self._place(h, i + 1, j)
            i = j

    @property
    def order(self) -> int:
        out = 1
        for level in self.levels:
            out *= len(level.trans)
        return out

    def random_element(self, rng: np.random.Generator) -> Perm:
        g = Perm.identity(self.degree)
        for level in reversed(self.levels):
            reps = list(level.trans.values())
            g = g * reps[int(rng.integers(len(reps)))]
        return g


class PermGroup:
    """Permutation group given by generators; the stabilizer chain is built on first use."""

    def __init__(self, degree: int, generators: Sequence[Perm] = ()) -> None:
        gens = list(generators)
        for g in gens:
            if g.degree != degree:
                raise InvalidInputError(f"generator of degree {g.degree} in a group of degree {degree}")
        self.degree = degree
        self.generators = gens
        self._chain: Optional[StabilizerChain] = None

    @classmethod
    def from_images(cls, images: Sequence[Sequence[int]], degree: Optional[int] = None) -> "PermGroup":
        perms = [Perm(im) for im in images]
        d = degree if degree is not None else (perms[0].degree if perms else 0)
        return cls(d, perms)

    @property
    def chain(self) -> StabilizerChain:
        if self._chain is None:
            chain = StabilizerChain(self.degree)
            for g in self.generators:
                chain.insert(g)
            self._chain = chain
        return self._chain

    def order(self) -> int:
        return self.chain.order

    def contains(self, g: Perm) -> bool:
        if g.degree != self.degree:
            raise InvalidInputError(f"permutation of degree {g.degree} tested against a group of degree {self.degree}")
        h, _ = self.chain.sift(g)
        return h.is_identity

    __contains__ = contains

    def random_element(self, rng: np.random.Generator) -> Perm:
        return self.chain.random_element(rng)

    def is_abelian(self) -> bool:
        return all(a * b == b * a for a, b in combinations(self.generators, 2))

    def orbits(self) -> list[list[int]]:
        seen: set[int] = set()
        out = []
        for start in range(self.degree):
            if start in seen:
                continue
            orbit = [start]
            seen.add(start)
            k = 0
            while k < len(orbit):
                pt = orbit[k]
                k += 1
                for g in self.generators:
                    img = g[pt]
                    if img not in seen:
                        seen.add(img)
                        orbit.append(img)
            out.append(orbit)
        return out

    def elements(self) -> list[Perm]:
        """All elements; only for small groups."""
        levels = self.chain.levels
        out = [Perm.identity(self.degree)]
        for level in reversed(levels):
            out = [g * u for g in out for u in level.trans.values()]
        return out

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, generators={len(self.generators)})"


# ---------------------------------------------------------------------------
# Standard groups
# ---------------------------------------------------------------------------


def symmetric_group(n: int) -> PermGroup:
    if n < 1:
        raise InvalidInputError("symmetric group needs n >= 1")
    if n == 1:
        return PermGroup(1, [])
    if n == 2:
        return PermGroup(2, [Perm.from_cycles(2, [(0, 1)])])
    return PermGroup(n, [Perm.from_cycles(n, [(0, 1)]), Perm.from_cycles(n, [tuple(range(n))])])


def alternating_group(n: int) -> PermGroup:
    if n < 3:
        return PermGroup(max(n, 1), [])
    long_cycle = tuple(range(n)) if n % 2 else tuple(range(1, n))
    gens = [Perm.from_cycles(n, [(0, 1, 2)])]
    if n > 3:
        gens.append(Perm.from_cycles(n, [long_cycle]))
    return PermGroup(n, gens)


def cyclic_group(n: int) -> PermGroup:
    if n < 1:
        raise InvalidInputError("cyclic group needs n >= 1")
    return PermGroup(n, [Perm.from_cycles(n, [tuple(range(n))])] if n > 1 else [])


# ---------------------------------------------------------------------------
# Subgroup constructions
# ---------------------------------------------------------------------------


def normal_closure(group: PermGroup, elements: Sequence[Perm]) -> PermGroup:
    """Smallest normal subgroup of `group` containing `elements`."""
    for s in elements:
        if not group.contains(s):
            raise InvalidInputError(f"{s!r} is not an element of the group")
    target = group.order()
    chain = StabilizerChain(group.degree)
    gens: list[Perm] = []
    queue = [s for s in elements if not s.is_identity]
    k = 0
    while k < len(queue):
        x = queue[k]
        k += 1
        if not chain.insert(x):
            continue
        gens.append(x)
        if chain.order == target:
            break
        for g in group.generators:
            queue.append(g.inverse() * x * g)
    out = PermGroup(group.degree, gens)
    out._chain = chain
    return out


def derived_subgroup(group: PermGroup) -> PermGroup:
    comms = [commutator(a, b) for a, b in combinations(group.generators, 2)]
    return normal_closure(group, [c for c in comms if not c.is_identity])


def derived_series(group: PermGroup) -> tuple[list[int], bool]:
    """
    Orders along G, G', G'', ... until the series stabilizes or reaches 1.

    A stable term is listed once more, so a perfect group gives [|G|, |G|].
    """
    current = group
    orders = [current.order()]
    if orders[0] == 1:
        return orders, True
    while True:
        nxt = derived_subgroup(current)
        orders.append(nxt.order())
        if orders[-1] == 1 or orders[-1] == orders[-2]:
            break
        current = nxt
    return orders, orders[-1] == 1


def _prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        while n % p == 0:
            out.append(p)
            n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _alternating_degree(order: int) -> Optional[int]:
    n, f = 5, 60
    while f < order:
        n += 1
        f = math.factorial(n) // 2
    return n if f == order else None


def simple_group_label(group: PermGroup, order: int) -> str:
    """Catalogue label for a simple group of the given order, or unknown(order)."""
    if len(_prime_factors(order)) == 1:
        return f"C{order}"
    if order == 168:
        return LABEL_PSL27
    if order == ORDER_WE6_PLUS:
        return LABEL_WE6_PLUS
    if order == ORDER_WE7_PLUS:
        return LABEL_WE7_PLUS
    n = _alternating_degree(order)
    if n is not None:
        # PSL(3,4) shares the order of A8 but has no action on 8 points.
        if n == 8 and not any(len(o) == 8 for o in group.orbits()):
            return f"unknown({order})"
        return f"A{n}"
    return f"unknown({order})"


def is_simple(group: PermGroup, rng: np.random.Generator, samples: int = SIMPLICITY_SAMPLES) -> bool:
    """
    No sampled element or generator has a proper nontrivial normal closure.

    Samples are deduplicated by element, not by cycle type, so classes that
    share a cycle type (the split classes of A_n, say) are each tested.
    """
    order = group.order()
    seen: set = set()
    candidates = chain((group.random_element(rng) for _ in range(samples)), group.generators)
    for x in candidates:
        if x.is_identity or x.images in seen:
            continue
        seen.add(x.images)
        if normal_closure(group, [x]).order() < order:
            return False
    return True


def _proper_normal_subgroup(group: PermGroup, rng: np.random.Generator) -> Optional[PermGroup]:
    order = group.order()
    for _ in range(SIMPLICITY_SAMPLES):
        x = group.random_element(rng)
        if x.is_identity:
            continue
        n = normal_closure(group, [x])
        if n.order() < order:
            return n
    return None


def composition_factors(group: PermGroup, seed: int = 0, budget: int = GROUP_ORDER_BUDGET) -> list[str]:
    """
    Labels of the composition factors, top of the series first.

    Abelian sections split into cyclic factors of prime order; a perfect
    section is labelled from the catalogue after the sampling simplicity test
    and reported as unknown(order) when it cannot be identified.
    """
    order = group.order()
    if order > budget:
        raise ResourceLimitError(f"group order {order} exceeds the budget {budget}")
    rng = as_generator(seed, "composition-factors")
    return _factors(group, rng)


def _factors(group: PermGroup, rng: np.random.Generator) -> list[str]:
    order = group.order()
    if order == 1:
        return []
    if group.is_abelian():
        return [f"C{p}" for p in _prime_factors(order)]
    derived = derived_subgroup(group)
    d = derived.order()
    if d < order:
        return [f"C{p}" for p in _prime_factors(order // d)] + _factors(derived, rng)
    if is_simple(group, rng):
        return [simple_group_label(group, order)]
    normal = _proper_normal_subgroup(group, rng)
    if normal is None:
        return [f"unknown({order})"]
    logger.debug("perfect non-simple section of order %d, normal subgroup of order %d", order, normal.order())
    return [f"unknown({order // normal.order()})"] + _factors(normal, rng)


# ---------------------------------------------------------------------------
# W(E6) on the 27 blow-up labels
# ---------------------------------------------------------------------------


def line_labels() -> list[str]:
    """a0..a5 (exceptional), b0..b5 (conics), c01..c45 (lines through two points)."""
    return [f"a{i}" for i in range(6)] + [f"b{i}" for i in range(6)] + [f"c{i}{j}" for i, j in combinations(range(6), 2)]


def _label_index() -> dict[str, int]:
    return {name: k for k, name in enumerate(line_labels())}


def _permute_labels(sigma: Sequence[int]) -> Perm:
    idx = _label_index()
    images = []
    for name in line_labels():
        if name[0] in "ab":
            images.append(idx[f"{name[0]}{sigma[int(name[1])]}"])
        else:
            i, j = sorted((sigma[int(name[1])], sigma[int(name[2])]))
            images.append(idx[f"c{i}{j}"])
    return Perm(images)


def cremona_involution() -> Perm:
    """Quadratic transformation centred at the first three points, as a label permutation."""
    idx = _label_index()
    images = list(range(27))

    def swap(x: str, y: str) -> None:
        images[idx[x]], images[idx[y]] = idx[y], idx[x]

    for i, j, k in ((0, 1, 2), (1, 0, 2), (2, 0, 1)):
        swap(f"a{i}", f"c{j}{k}")
    for i, j, k in ((3, 4, 5), (4, 3, 5), (5, 3, 4)):
        swap(f"b{i}", f"c{j}{k}")
    return Perm(images)


def weyl_e6_on_lines() -> PermGroup:
    """W(E6) acting on the 27 labels: S6 on the six points plus one Cremona move."""
    transposition = _permute_labels([1, 0, 2, 3, 4, 5])
    six_cycle = _permute_labels([1, 2, 3, 4, 5, 0])
    return PermGroup(27, [transposition, six_cycle, cremona_involution()])


def combinatorial_adjacency(labels: Optional[Sequence[str]] = None) -> np.ndarray:
    """Meeting matrix of the 27 labels: intersection number 1 means the lines meet."""
    names = list(labels) if labels is not None else line_labels()

    def points(name: str) -> tuple[str, frozenset]:
        return name[0], frozenset(int(c) for c in name[1:])

    adj = np.zeros((len(names), len(names)), dtype=bool)
    for x, y in combinations(range(len(names)), 2):
        (kx, px), (ky, py) = points(names[x]), points(names[y])
        if {kx, ky} == {"a", "b"}:
            meet = px != py
        elif kx == "c" and ky == "c":
            meet = not (px & py)
        elif "c" in (kx, ky) and kx != ky:
            single, pair = (px, py) if kx != "c" else (py, px)
            meet = single <= pair
        else:
            meet = False
        adj[x, y] = adj[y, x] = meet
    return adj
