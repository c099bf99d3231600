# -*- coding: utf-8 -*-
"""
The 28 bitangents of a smooth plane quartic.

Pipelines:
- bitangents: the two perfect-square conditions on C(x, mx + c, 1) solved by
  total-degree homotopy (192 paths per chart), with fallback charts
- bitangents_from_two: write the quartic as xy*U - V^2 after moving two
  bitangents to x = 0, y = 0; the conic U + 2tV + t^2 xy splits at the 5 roots
  of a quintic in t, each split giving two more bitangents
- quartic_from_cubic_point: the branch quartic of the projection of a cubic
  surface from one of its points, with the 27 projected lines plus the
  tangent-plane line as bitangents

A bitangent carries a square witness q: in the orthonormal basis (u1, u2) of
the line returned by `line_basis`, C(s u1 + t u2) = q(s, t)^2 for the
max-coefficient-normalized quartic.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Optional, Sequence

import numpy as np

from rdlab.constants import BITANGENT_RESIDUAL_TOL, POINT_ON_SURFACE_TOL, TRIPLE_LOOKUP_BUDGET
from rdlab.cubic_lines import CubicSurface, lines_on_cubic
from rdlab.errors import DegenerateInputError, InvalidInputError, NumericalFailureError, ResourceLimitError
from rdlab.homotopy import TrackerConfig, find_singular_points, solve_total_degree
from rdlab.linalg import (
    decide_rank_drop,
    normalize_projective,
    nullspace,
    projective_distance,
    split_degenerate_conic,
    unit,
)
from rdlab.multipoly import (
    CompiledForm,
    MultiPoly,
    binary_restriction,
    coeffs_of_form,
    evaluation_rows,
    form_from_coeffs,
    pullback,
    ternary_quadratic_matrix,
)
from rdlab.poly import MODE_COMPLEX, Polynomial, roots
from rdlab.rng import SeedTree, complex_normal

logger = logging.getLogger(__name__)

SYZYGETIC = "syzygetic"
ASYZYGETIC = "asyzygetic"

BITANGENT_DEDUP_TOL = 1e-6
CONTACT_CONIC_TOL = 1e-7


# ---------------------------------------------------------------------------
# Types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PlaneQuartic:
    coeffs: tuple
    smooth_checked: bool = False

    def __post_init__(self) -> None:
        if len(self.coeffs) != 15:
            raise InvalidInputError(f"a plane quartic needs 15 coefficients, got {len(self.coeffs)}")
        if all(c == 0 for c in self.coeffs):
            raise InvalidInputError("quartic form is identically zero")

    @classmethod
    def from_form(cls, form: MultiPoly, smooth_checked: bool = False) -> "PlaneQuartic":
        if form.nvars != 3 or any(sum(e) != 4 for e in form.terms):
            raise InvalidInputError("not a homogeneous quartic in 3 variables")
        return cls(tuple(coeffs_of_form(form, 4)), smooth_checked)

    @property
    def form(self) -> MultiPoly:
        return form_from_coeffs(self.coeffs, 3, 4)

    @property
    def compiled(self) -> CompiledForm:
        return CompiledForm(self.form.normalized())


@dataclass(frozen=True)
class Bitangent:
    line: tuple
    contacts: tuple
    witness: tuple
    residual: float = 0.0

    @property
    def vector(self) -> np.ndarray:
        return np.array(self.line, dtype=complex)

    @property
    def hyperflex(self) -> bool:
        a, b = (np.array(c, dtype=complex) for c in self.contacts)
        return projective_distance(a, b) < 1e-6


@dataclass(frozen=True)
class QuarticSplitForm:
    """xy(U + 2kV + t^2 xy) - (V + t xy)^2 with conics U, V, W = V + t xy in x^2, xy, xz, y^2, yz, z^2 order."""

    U: tuple
    V: tuple
    k: complex
    t: complex
    W: tuple

    def quartic(self) -> MultiPoly:
        u, v, w = (_conic_poly(c) for c in (self.U, self.V, self.W))
        xy = MultiPoly(3, {(1, 1, 0): 1})
        return xy * (u + v * (2 * self.k) + xy * (self.t**2)) - w * w

    def residual(self, form: MultiPoly) -> float:
        diff = self.quartic() - form
        return max((abs(complex(c)) for c in diff.terms.values()), default=0.0)


@dataclass
class SteinerPass:
    roots: list
    split_forms: list
    pairs: list
    contact_residual: float
    flagged_tetrads: int = 0


@dataclass(frozen=True)
class SyzygyVerdict:
    verdict: str
    flagged: bool
    degenerate: bool
    relative_smallest: float


@dataclass
class ConfigurationCounts:
    steiner_range: tuple[int, int]
    aronhold_range: tuple[int, int]
    syzygetic_triples: int
    flagged: list = field(default_factory=list)

    @property
    def steiner(self):
        lo, hi = self.steiner_range
        return lo if lo == hi else self.steiner_range

    @property
    def aronhold(self):
        lo, hi = self.aronhold_range
        return lo if lo == hi else self.aronhold_range

    def to_dict(self) -> dict:
        return {
            "steiner": self.steiner if isinstance(self.steiner, int) else list(self.steiner),
            "aronhold": self.aronhold if isinstance(self.aronhold, int) else list(self.aronhold),
            "syzygetic_triples": self.syzygetic_triples,
            "flagged": [list(t) for t in self.flagged],
        }


# ---------------------------------------------------------------------------
# Bitangent helpers
# ---------------------------------------------------------------------------


def _conic_poly(coeffs6: Sequence) -> MultiPoly:
    return form_from_coeffs(list(coeffs6), 3, 2)


def line_basis(line: np.ndarray) -> np.ndarray:
    """Orthonormal basis (2 x 3) of the points on a line covector."""
    return nullspace(np.asarray(line, dtype=complex)[None, :], 2)


def square_root(g: Sequence[complex]) -> np.ndarray:
    """q with q^2 = g for a binary quartic, taken from the larger end coefficient."""
    g = np.asarray(g, dtype=complex)
    if abs(g[0]) >= abs(g[4]):
        q0 = np.sqrt(g[0])
        if q0 == 0:
            return np.zeros(3, dtype=complex)
        q1 = g[1] / (2 * q0)
        q2 = (g[2] - q1 * q1) / (2 * q0)
    else:
        q2 = np.sqrt(g[4])
        q1 = g[3] / (2 * q2)
        q0 = (g[2] - q1 * q1) / (2 * q2)
    return np.array([q0, q1, q2], dtype=complex)


def _square(q: np.ndarray) -> np.ndarray:
    q0, q1, q2 = q
    return np.array([q0 * q0, 2 * q0 * q1, q1 * q1 + 2 * q0 * q2, 2 * q1 * q2, q2 * q2])


def _quadratic_zeros(q: np.ndarray) -> list[tuple[complex, complex]]:
    """Zeros (s : t) of q0 s^2 + q1 st + q2 t^2."""
    q0, q1, q2 = q
    if abs(q2) >= abs(q0):
        ts = np.roots([q2, q1, q0]) if q2 != 0 else np.array([0.0])
        out = [(1.0, complex(t)) for t in ts]
    else:
        ss = np.roots([q0, q1, q2])
        out = [(complex(s), 1.0) for s in ss]
    if len(out) == 1:
        out.append(out[0])
    return out


def make_bitangent(form: CompiledForm, line: np.ndarray) -> Bitangent:
    """Bitangent record with witness, contacts and residual for a line covector."""
    line = normalize_projective(line)
    u = line_basis(line)
    g = binary_restriction(form, 4, u[0], u[1])
    q = square_root(g)
    residual = float(np.max(np.abs(g - _square(q))))
    contacts = tuple(
        tuple(complex(c) for c in normalize_projective(s * u[0] + t * u[1]))
        for s, t in _quadratic_zeros(q)
    )
    return Bitangent(tuple(complex(c) for c in line), contacts, tuple(complex(c) for c in q), residual)


def polish_bitangent(form: CompiledForm, line: np.ndarray, iterations: int = 8) -> np.ndarray:
    """
    Newton on C(u1(l), u2(l)) - q^2 = 0 in the unknowns (two line coordinates,
    q0, q1, q2), with the largest line coordinate fixed to 1.
    """
    ell = normalize_projective(line)
    k = int(np.argmax(np.abs(ell)))
    i, j = [m for m in range(3) if m != k]
    w = np.exp(2j * np.pi * np.arange(5) / 5)

    def basis(e: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        u1 = np.zeros(3, dtype=complex)
        u2 = np.zeros(3, dtype=complex)
        u1[i], u1[k] = 1.0, -e[i]
        u2[j], u2[k] = 1.0, -e[j]
        return u1, u2

    u1, u2 = basis(ell)
    q = square_root(binary_restriction(form, 4, u1, u2))
    for _ in range(iterations):
        pts = u1[None, :] + w[:, None] * u2[None, :]
        g = np.fft.fft(form(pts)) / 5
        r = g - _square(q)
        if np.max(np.abs(r)) < 1e-15:
            break
        dk = form.gradient(pts)[:, k]
        jl = np.fft.fft(np.stack([-dk, -w * dk], axis=1), axis=0) / 5
        q0, q1, q2 = q
        jq = -np.array([
            [2 * q0, 0, 0],
            [2 * q1, 2 * q0, 0],
            [2 * q2, 2 * q1, 2 * q0],
            [0, 2 * q2, 2 * q1],
            [0, 0, 2 * q2],
        ])
        step = np.linalg.lstsq(np.hstack([jl, jq]), r, rcond=None)[0]
        ell[i] -= step[0]
        ell[j] -= step[1]
        q = q - step[2:]
        u1, u2 = basis(ell)
        if np.max(np.abs(step)) < 1e-15:
            break
    return ell


def _add_unique(found: list, b: Bitangent) -> int:
    """Index of b in found, appending it when new."""
    for idx, other in enumerate(found):
        if projective_distance(b.vector, other.vector) < BITANGENT_DEDUP_TOL:
            return idx
    found.append(b)
    return len(found) - 1


def _sort_key(b: Bitangent) -> tuple:
    return tuple((round(c.real, 8), round(c.imag, 8)) for c in b.line)


def _accept(form: CompiledForm, line: np.ndarray) -> Optional[Bitangent]:
    b = make_bitangent(form, polish_bitangent(form, line))
    return b if b.residual <= BITANGENT_RESIDUAL_TOL else None


# ---------------------------------------------------------------------------
# Example curves
# ---------------------------------------------------------------------------


def random_quartic(rng: np.random.Generator) -> PlaneQuartic:
    return PlaneQuartic(tuple(complex(c) for c in complex_normal(rng, 15)))


def is_smooth(quartic: PlaneQuartic, rng: np.random.Generator) -> bool:
    return not find_singular_points(quartic.form, rng)


def apply_projectivity(quartic: PlaneQuartic, bitangents: Sequence[Bitangent], matrix: np.ndarray) -> tuple[PlaneQuartic, list[Bitangent]]:
    """Image under X -> M X: quartic C(M^-1 X), lines M^-T l."""
    m = np.asarray(matrix, dtype=complex)
    inv = np.linalg.inv(m)
    moved = PlaneQuartic.from_form(pullback(quartic.form, inv), quartic.smooth_checked)
    compiled = moved.compiled
    out = [make_bitangent(compiled, inv.T @ b.vector) for b in bitangents]
    return moved, out


# ---------------------------------------------------------------------------
# Direct solve
# ---------------------------------------------------------------------------


def chart_equations(form: MultiPoly) -> list[MultiPoly]:
    """
    The perfect-square conditions on C(x, mx + c, 1) = a4 x^4 + ... + a0:
    8 a1 a4^2 - 4 a2 a3 a4 + a3^3 and 64 a0 a4^3 - (4 a2 a4 - a3^2)^2, in (m, c).
    """
    m, c, x = (MultiPoly.variable(i, 3) for i in range(3))
    composed = form.compose([x, m * x + c, MultiPoly.constant(1, 3)])
    a = [dict() for _ in range(5)]
    for exp, coeff in composed.terms.items():
        a[exp[2]][exp[:2]] = coeff
    a0, a1, a2, a3, a4 = (MultiPoly(2, terms) for terms in a)
    e1 = a1 * a4 * a4 * 8 - a2 * a3 * a4 * 4 + a3 * a3 * a3
    inner = a2 * a4 * 4 - a3 * a3
    e2 = a0 * a4 * a4 * a4 * 64 - inner * inner
    return [e1, e2]


def _charts(tree: SeedTree) -> list[np.ndarray]:
    eye = np.eye(3, dtype=complex)
    out = [eye, eye[:, [1, 0, 2]]]
    for k in range(2):
        q, _ = np.linalg.qr(complex_normal(tree.child("chart", k).generator(), (3, 3)))
        out.append(q)
    return out


def _require_smooth(quartic: PlaneQuartic, rng: np.random.Generator) -> None:
    if not quartic.smooth_checked and not is_smooth(quartic, rng):
        raise InvalidInputError("plane quartic is singular")


def bitangents(quartic: PlaneQuartic, seed: int = 0, config: Optional[TrackerConfig] = None) -> list[Bitangent]:
    """All 28 bitangents from the chart y = mx + c, with fallback charts."""
    tree = SeedTree(seed).child("bitangents")
    _require_smooth(quartic, tree.child("smooth").generator())
    form = quartic.form.normalized()
    compiled = CompiledForm(form)
    found: list[Bitangent] = []
    charts_used = 0
    for k, mat in enumerate(_charts(tree)):
        charts_used += 1
        result = solve_total_degree(chart_equations(pullback(form, mat)), tree.child("chart-solve", k).generator(), config)
        inv_t = np.linalg.inv(mat).T
        before = len(found)
        for m, c in result.solutions:
            b = _accept(compiled, inv_t @ np.array([m, -1.0, c]))
            if b is not None:
                _add_unique(found, b)
        logger.debug("chart %d: %d solutions, %d new bitangents", k, len(result.solutions), len(found) - before)
        if len(found) >= 28:
            break
        logger.warning("chart %d left %d bitangents missing; trying the next chart", k, 28 - len(found))
    if len(found) != 28:
        raise NumericalFailureError("did not find 28 bitangents", {"found": len(found), "charts": charts_used})
    logger.info("bitangents: 28 from %d chart(s)", charts_used)
    return sorted(found, key=_sort_key)


# ---------------------------------------------------------------------------
# 28 from 2
# ---------------------------------------------------------------------------


def _binary_slice(form: MultiPoly, zero_var: int) -> list[complex]:
    """Coefficients of form restricted to x_{zero_var} = 0, leading power of the first free variable first."""
    free = [v for v in range(3) if v != zero_var]
    out = [0j] * 5
    for exp, c in form.terms.items():
        if exp[zero_var] == 0:
            out[4 - exp[free[0]]] += complex(c)
    return out


def fit_split_form(form: MultiPoly) -> tuple[tuple, tuple, float]:
    """
    Conics U, V with form = xy U - V^2 when x = 0 and y = 0 are bitangents.

    V(0, y, z) and V(x, 0, z) are the square roots of -form on the two lines,
    matched on z^2; V has no xy term and U = (form + V^2) / (xy).
    Returns (U, V, fit residual).
    """
    c001 = complex(form.terms.get((0, 0, 4), 0))
    if abs(c001) <= 1e-10 * max(1.0, form.max_abs_coefficient()):
        raise InvalidInputError("the two bitangents meet on the quartic")
    w1 = square_root([-c for c in _binary_slice(form, 0)])
    w2 = square_root([-c for c in _binary_slice(form, 1)])
    if abs(w1[2] - w2[2]) > abs(w1[2] + w2[2]):
        w2 = -w2
    v = (w2[0], 0j, w2[1], w1[0], w1[1], w1[2])
    vp = _conic_poly(v)
    total = form + vp * vp
    u_terms: dict = {}
    leftover = 0.0
    for exp, c in total.terms.items():
        if exp[0] >= 1 and exp[1] >= 1:
            u_terms[(exp[0] - 1, exp[1] - 1, exp[2])] = c
        else:
            leftover = max(leftover, abs(complex(c)))
    u = tuple(complex(c) for c in coeffs_of_form(MultiPoly(3, u_terms), 2))
    return u, tuple(complex(c) for c in v), leftover


def _pencil_matrix(u: tuple, v: tuple, t: complex) -> np.ndarray:
    coeffs = np.array(u) + 2 * t * np.array(v)
    coeffs[1] += t * t
    return ternary_quadratic_matrix(coeffs)


def _conic_rows(points: Sequence[np.ndarray]) -> np.ndarray:
    return evaluation_rows(np.array([unit(np.asarray(p, dtype=complex)) for p in points]), 3, 2)


def steiner_pass(quartic: PlaneQuartic, t1: Bitangent, t2: Bitangent, rng: np.random.Generator) -> SteinerPass:
    """The 5 bitangent pairs completing {t1, t2} to a Steiner complex."""
    form = quartic.form.normalized()
    compiled = CompiledForm(form)
    l1, l2 = t1.vector, t2.vector
    meet = np.cross(l1, l2)
    if np.linalg.norm(meet) < 1e-12:
        raise InvalidInputError("the two bitangents coincide")
    if abs(compiled(unit(meet)[None, :])[0]) < 1e-8:
        raise InvalidInputError("the two bitangents meet on the quartic")
    a = np.vstack([unit(l1), unit(l2), complex_normal(rng, 3)])
    moved = pullback(form, np.linalg.inv(a))
    u, v, leftover = fit_split_form(moved)
    if leftover > 1e-6 * max(1.0, moved.max_abs_coefficient()):
        raise NumericalFailureError("split form does not reproduce the quartic", {"leftover": leftover})

    w = np.exp(2j * np.pi * np.arange(6) / 6)
    dets = np.array([np.linalg.det(_pencil_matrix(u, v, t)) for t in w])
    coeffs = np.fft.fft(dets) / 6
    if abs(coeffs[5]) <= 1e-10 * np.max(np.abs(coeffs)):
        raise DegenerateInputError("bitangents_from_two", "the quintic in t drops degree")
    quintic = Polynomial(tuple(complex(c) for c in coeffs[::-1]), MODE_COMPLEX)
    ts = [complex(z) for z in roots(quintic, tol=1e-8).roots]
    for z1, z2 in combinations(ts, 2):
        if abs(z1 - z2) <= 1e-6 * (1 + abs(z1)):
            raise DegenerateInputError("bitangents_from_two", f"repeated root t = {z1:.6g}")

    forms, pairs = [], []
    for t in ts:
        p, q = split_degenerate_conic(_pencil_matrix(u, v, t))
        pair = []
        for cov in (p, q):
            b = _accept(compiled, a.T @ cov)
            if b is None:
                raise NumericalFailureError("split conic line is not a bitangent", {"t": [t.real, t.imag]})
            pair.append(b)
        pairs.append(tuple(pair))
        wconic = tuple(complex(c) for c in (np.array(v) + t * np.array([0, 1, 0, 0, 0, 0])))
        forms.append(QuarticSplitForm(U=u, V=v, k=t, t=t, W=wconic))

    worst = 0.0
    for split, (p, q) in zip(forms, pairs):
        wpoly = CompiledForm(_conic_poly(split.W).normalized())
        for b in (t1, t2, p, q):
            for x in b.contacts:
                y = unit(a @ np.array(x, dtype=complex))
                worst = max(worst, abs(wpoly(y[None, :])[0]))
    if worst > CONTACT_CONIC_TOL:
        raise NumericalFailureError("contact points are off the conic W", {"residual": worst})

    flagged = 0
    members = [(t1, t2)] + pairs
    for (a1, a2), (b1, b2) in combinations(members, 2):
        rows = _conic_rows([*a1.contacts, *a2.contacts, *b1.contacts, *b2.contacts])
        decision = decide_rank_drop(rows, expected_rank=6)
        if decision.flagged or not decision.deficient:
            flagged += 1
    if flagged:
        logger.warning("steiner pass: %d of 15 tetrads not clearly syzygetic", flagged)
    return SteinerPass(ts, forms, pairs, worst, flagged)


def bitangents_from_two(quartic: PlaneQuartic, t1: Bitangent, t2: Bitangent, seed: int = 0) -> list[Bitangent]:
    """Complete two bitangents to 28 by repeated Steiner passes on new pairs."""
    tree = SeedTree(seed).child("from-two")
    compiled = quartic.compiled
    for b in (t1, t2):
        if make_bitangent(compiled, b.vector).residual > BITANGENT_RESIDUAL_TOL:
            raise InvalidInputError("input line is not a bitangent of the quartic")
    found: list[Bitangent] = [t1]
    _add_unique(found, t2)
    if len(found) != 2:
        raise InvalidInputError("the two bitangents coincide")
    used: set[frozenset] = set()
    queue = [(0, 1)]
    passes = 0
    first_pass = None
    while queue and len(found) < 28:
        i, j = queue.pop(0)
        key = frozenset((i, j))
        if key in used:
            continue
        used.add(key)
        try:
            result = steiner_pass(quartic, found[i], found[j], tree.child("pass", passes).generator())
        except InvalidInputError as exc:
            if passes == 0:
                raise
            logger.debug("skipping pair (%d, %d): %s", i, j, exc)
            continue
        passes += 1
        for p, q in result.pairs:
            used.add(frozenset((_add_unique(found, p), _add_unique(found, q))))
        if first_pass is None:
            first_pass = len(found)
        queue.extend((a, b) for a, b in combinations(range(len(found)), 2) if frozenset((a, b)) not in used and (a, b) not in queue)
    if len(found) != 28:
        raise NumericalFailureError("Steiner passes did not reach 28 bitangents", {"found": len(found), "passes": passes})
    logger.info("bitangents_from_two: 28 after %d passes (first pass %d)", passes, first_pass)
    return sorted(found, key=_sort_key)


# ---------------------------------------------------------------------------
# From a cubic surface
# ---------------------------------------------------------------------------


def quartic_from_cubic_point(
    surface: CubicSurface,
    point: Sequence[complex],
    seed: int = 0,
    lines: Optional[Sequence] = None,
) -> tuple[PlaneQuartic, list[Bitangent]]:
    """
    Branch quartic of the projection from a point of the surface.

    With f(p + s E v) = A(v) s + B(v) s^2 + C(v) s^3 in a frame E
    complementary to p, the branch quartic is B^2 - 4AC; each line of the
    surface projects to a bitangent and A = 0 is the 28th.
    """
    tree = SeedTree(seed).child("from-cubic")
    p = unit(np.asarray(point, dtype=complex))
    form = surface.form.normalized()
    compiled = CompiledForm(form)
    if abs(compiled(p[None, :])[0]) > POINT_ON_SURFACE_TOL:
        raise InvalidInputError("point is not on the surface")
    if lines is None:
        lines = lines_on_cubic(surface, seed=seed).lines
    for line in lines:
        basis = line.points()
        proj = basis.T @ (basis.conj() @ p)
        if np.linalg.norm(p - proj) < 1e-6:
            raise InvalidInputError("point lies on a line of the surface")

    frame, _ = np.linalg.qr(np.column_stack([p, complex_normal(tree.child("frame").generator(), (4, 3))]))
    frame[:, 0] = p
    e = frame[:, 1:]
    grad = compiled.gradient(p[None, :])[0]
    hess = compiled.hessian(p[None, :])[0]
    a_cov = grad @ e
    b_mat = 0.5 * e.T @ hess @ e
    a_poly = MultiPoly.linear([complex(c) for c in a_cov])
    b_poly = MultiPoly(3)
    for i in range(3):
        for j in range(3):
            exp = [0, 0, 0]
            exp[i] += 1
            exp[j] += 1
            b_poly = b_poly + MultiPoly(3, {tuple(exp): complex(b_mat[i, j])})
    c_poly = pullback(form, e)
    branch = b_poly * b_poly - a_poly * c_poly * 4
    quartic = PlaneQuartic.from_form(branch.normalized())
    qform = quartic.compiled

    out: list[Bitangent] = []
    for line in lines:
        pts = line.points()
        coords = np.linalg.solve(frame, pts.T)[1:, :]
        b = _accept(qform, np.cross(coords[:, 0], coords[:, 1]))
        if b is None:
            raise NumericalFailureError("projected line is not a bitangent of the branch quartic", {})
        _add_unique(out, b)
    tangent = _accept(qform, a_cov)
    if tangent is None:
        raise NumericalFailureError("tangent-plane line is not a bitangent of the branch quartic", {})
    _add_unique(out, tangent)
    if len(out) != 28:
        raise NumericalFailureError("projected bitangents are not distinct", {"found": len(out)})
    return quartic, sorted(out, key=_sort_key)


# ---------------------------------------------------------------------------
# Syzygies, Steiner complexes and Aronhold sets
# ---------------------------------------------------------------------------


def syzygy_test(quartic: PlaneQuartic, items: Sequence[Bitangent]) -> SyzygyVerdict:
    """Syzygetic when the 2n contact points lie on a conic (rank < 6)."""
    if len(items) < 3:
        raise InvalidInputError("syzygy test needs at least 3 bitangents")
    points = [np.array(x, dtype=complex) for b in items for x in b.contacts]
    degenerate = any(b.hyperflex for b in items) or any(
        projective_distance(x, y) < 1e-6 for x, y in combinations(points, 2)
    )
    decision = decide_rank_drop(_conic_rows(points), expected_rank=6)
    verdict = SYZYGETIC if decision.deficient else ASYZYGETIC
    return SyzygyVerdict(verdict, decision.flagged or degenerate, degenerate, decision.relative_smallest)


def triple_table(quartic: PlaneQuartic, all28: Sequence[Bitangent]) -> tuple[dict, list]:
    """Syzygy verdict for every triple, keyed by sorted index triple, plus the flagged triples."""
    table: dict[tuple, bool] = {}
    flagged = []
    for triple in combinations(range(len(all28)), 3):
        v = syzygy_test(quartic, [all28[k] for k in triple])
        table[triple] = v.verdict == SYZYGETIC
        if v.flagged:
            flagged.append(triple)
    return table, flagged


def steiner_complexes(
    table: dict,
    n: int = 28,
    tetrad_test: Optional[Callable[[tuple], bool]] = None,
) -> list[list[tuple[int, int]]]:
    """
    Groups of pairs: {a,b} and {c,d} share a complex when {a,b,c,d} is a
    syzygetic tetrad. Candidates are 4-sets whose four triples are all
    syzygetic; `tetrad_test` confirms them on the 8 contact points.
    """
    parent = {pair: pair for pair in combinations(range(n), 2)}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def syz(*idx) -> bool:
        return table[tuple(sorted(idx))]

    for a, b, c, d in combinations(range(n), 4):
        if syz(a, b, c) and syz(a, b, d) and syz(a, c, d) and syz(b, c, d):
            if tetrad_test is not None and not tetrad_test((a, b, c, d)):
                continue
            for p1, p2 in (((a, b), (c, d)), ((a, c), (b, d)), ((a, d), (b, c))):
                r1, r2 = find(p1), find(p2)
                if r1 != r2:
                    parent[r1] = r2
    groups: dict = {}
    for pair in parent:
        groups.setdefault(find(pair), []).append(pair)
    return sorted((sorted(g) for g in groups.values() if len(g) > 1), key=lambda g: g[0])


def aronhold_sets(table: dict, n: int = 28, budget: int = TRIPLE_LOOKUP_BUDGET) -> list[tuple[int, ...]]:
    """7-subsets with every triple asyzygetic, by backtracking."""
    out: list[tuple[int, ...]] = []
    lookups = 0

    def extend(chosen: list[int], start: int) -> None:
        nonlocal lookups
        if len(chosen) == 7:
            out.append(tuple(chosen))
            return
        for k in range(start, n):
            ok = True
            for i, j in combinations(chosen, 2):
                lookups += 1
                if lookups > budget:
                    raise ResourceLimitError(f"Aronhold enumeration exceeded {budget} triple lookups")
                if table[(i, j, k)]:
                    ok = False
                    break
            if ok:
                chosen.append(k)
                extend(chosen, k + 1)
                chosen.pop()

    extend([], 0)
    return out


def classify_configurations(quartic: PlaneQuartic, all28: Sequence[Bitangent]) -> ConfigurationCounts:
    """Steiner complex and Aronhold set counts; ambiguous triples widen the counts to intervals."""
    if len(all28) != 28:
        raise InvalidInputError(f"need exactly 28 bitangents, got {len(all28)}")
    for b in all28:
        if b.residual > BITANGENT_RESIDUAL_TOL:
            raise InvalidInputError("a bitangent fails its square-witness check")
    table, flagged = triple_table(quartic, all28)
    variants = [table]
    if flagged:
        logger.warning("classify_configurations: %d ambiguous triples", len(flagged))
        for value in (True, False):
            alt = dict(table)
            alt.update({t: value for t in flagged})
            variants.append(alt)

    def tetrad_test(idx: tuple) -> bool:
        points = [x for k in idx for x in all28[k].contacts]
        return decide_rank_drop(_conic_rows(points), expected_rank=6).deficient

    steiner = [len(steiner_complexes(t, tetrad_test=tetrad_test)) for t in variants]
    aronhold = [len(aronhold_sets(t)) for t in variants]
    return ConfigurationCounts(
        steiner_range=(min(steiner), max(steiner)),
        aronhold_range=(min(aronhold), max(aronhold)),
        syzygetic_triples=sum(table.values()),
        flagged=flagged,
    )

