# -*- coding: utf-8 -*-
"""Exact and numeric linear algebra used by the geometry pipelines."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from rdlab.constants import RANK_DROP_TOL, RANK_FULL_TOL

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Exact (Fraction) routines
# ---------------------------------------------------------------------------


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over the rationals; returns (matrix, pivot columns)."""
    a = [[Fraction(x) for x in row] for row in rows]
    if not a:
        return a, []
    nrows, ncols = len(a), len(a[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pivot = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        lead = a[r][c]
        a[r] = [x / lead for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c] != 0:
                factor = a[i][c]
                a[i] = [x - factor * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a, pivots


def exact_rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def exact_nullspace(rows: Sequence[Sequence]) -> list[list[Fraction]]:
    """Basis of {v : rows · v = 0}, one vector per free column."""
    if not rows:
        return []
    reduced, pivots = rref(rows)
    ncols = len(reduced[0])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -reduced[r][f]
        basis.append(v)
    return basis


def exact_determinant(rows: Sequence[Sequence]) -> Fraction:
    from rdlab.poly import bareiss_determinant

    return bareiss_determinant(rows)


# ---------------------------------------------------------------------------
# Numeric routines
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RankDecision:
    """Outcome of a singular-value rank test."""

    deficient: bool
    flagged: bool
    relative_smallest: float
    gap: float


def decide_rank_drop(matrix: np.ndarray, expected_rank: int | None = None) -> RankDecision:
    """
    Decide whether `matrix` has rank below min(shape) (or below expected_rank).

    Deficient when the relevant singular value is below RANK_DROP_TOL times
    the largest, full when above RANK_FULL_TOL; anything between is flagged.
    """
    sv = np.linalg.svd(np.asarray(matrix, dtype=complex), compute_uv=False)
    full = expected_rank if expected_rank is not None else min(np.shape(matrix))
    top = float(sv[0]) if sv.size else 0.0
    if top == 0.0:
        return RankDecision(True, False, 0.0, float("inf"))
    smallest = float(sv[full - 1]) if full - 1 < sv.size else 0.0
    previous = float(sv[full - 2]) if full >= 2 else top
    rel = smallest / top
    gap = previous / smallest if smallest > 0 else float("inf")
    if rel <= RANK_DROP_TOL:
        return RankDecision(True, False, rel, gap)
    if rel >= RANK_FULL_TOL:
        return RankDecision(False, False, rel, gap)
    logger.debug("ambiguous rank decision: relative singular value %.3e", rel)
    return RankDecision(rel < (RANK_DROP_TOL * RANK_FULL_TOL) ** 0.5, True, rel, gap)


def nullspace(matrix: np.ndarray, dim: int) -> np.ndarray:
    """The `dim` right-singular directions of smallest singular value, as rows a with M a ≈ 0."""
    m = np.asarray(matrix, dtype=complex)
    _, _, vh = np.linalg.svd(m)
    return vh[-dim:].conj()


def numeric_rank(matrix: np.ndarray, rel_tol: float = 1e-8) -> int:
    sv = np.linalg.svd(np.asarray(matrix, dtype=complex), compute_uv=False)
    if sv.size == 0 or sv[0] == 0:
        return 0
    return int(np.sum(sv > rel_tol * sv[0]))


def normalize_projective(v: np.ndarray) -> np.ndarray:
    """Scale so the largest-modulus coordinate (first on ties) equals 1."""
    v = np.asarray(v, dtype=complex)
    k = int(np.argmax(np.abs(v)))
    if v[k] == 0:
        raise ValueError("zero vector has no projective normalization")
    return v / v[k]


def unit(v: np.ndarray) -> np.ndarray:
    v = np.asarray(v, dtype=complex)
    return v / np.linalg.norm(v)


def projective_distance(u: np.ndarray, v: np.ndarray) -> float:
    """Chordal distance between the points [u], [v] of projective space."""
    a, b = unit(u), unit(v)
    overlap = abs(np.vdot(a, b))
    return float(np.sqrt(max(0.0, 1.0 - overlap**2)))


def cross_matrix(p: np.ndarray) -> np.ndarray:
    """[p]_x with [p]_x v = p × v."""
    x, y, z = p
    return np.array([[0, -z, y], [z, 0, -x], [-y, x, 0]], dtype=complex)


def adjugate3(m: np.ndarray) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    cof = np.empty((3, 3), dtype=complex)
    for i in range(3):
        for j in range(3):
            minor = np.delete(np.delete(a, i, axis=0), j, axis=1)
            cof[i, j] = (-1) ** (i + j) * (minor[0, 0] * minor[1, 1] - minor[0, 1] * minor[1, 0])
    return cof.T


def split_degenerate_conic(conic: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """
    Split a rank-2 symmetric conic matrix A = g h^T + h g^T into lines g, h.

    -adj(A) = p p^T with p = g × h; A + [p]_x is rank one, its largest row
    gives one line and its largest column the other.
    """
    a = np.asarray(conic, dtype=complex)
    b = adjugate3(a)
    i = int(np.argmax(np.abs(np.diag(b))))
    beta = np.sqrt(-b[i, i])
    if beta == 0:
        raise ValueError("conic is a double line")
    p = b[:, i] / beta
    d = a + cross_matrix(p)
    j, k = np.unravel_index(int(np.argmax(np.abs(d))), d.shape)
    return d[j, :].copy(), d[:, k].copy()


def safe_solve(jac: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    """Batched solve of jac x = rhs; singular members come back as NaN."""
    try:
        return np.linalg.solve(jac, rhs[..., None])[..., 0]
    except np.linalg.LinAlgError:
        out = np.full(rhs.shape, np.nan, dtype=complex)
        for idx in range(jac.shape[0]):
            try:
                out[idx] = np.linalg.solve(jac[idx], rhs[idx])
            except np.linalg.LinAlgError:
                pass
        return out
