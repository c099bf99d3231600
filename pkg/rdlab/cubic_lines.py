# -*- coding: utf-8 -*-
"""
The 27 lines on a smooth cubic surface.

Three independent pipelines produce a LineConfiguration:
- lines_on_cubic: total-degree homotopy on the four coefficient equations of
  a chart x2 = αx0 + βx1, x3 = γx0 + δx1, with fallback charts
- lines_from_one: the pencil of planes through a known line; the residual
  conic degenerates at the 5 roots of a quintic, each giving two new lines
- blowup_cubic: the image of P^2 under the cubics through 6 points, with the
  blow-up labels a_i (exceptional), b_i (conics) and c_ij (lines)

Surfaces are homogeneous cubics in x0..x3 with 20 coefficients in the
`rdlab.multipoly.monomials(4, 3)` order.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

import numpy as np

from rdlab.constants import BLOWUP_RETRIES, LINE_DEDUP_TOL, LINE_RESIDUAL_TOL, POINT_ON_SURFACE_TOL, RANK_DROP_TOL
from rdlab.errors import DegenerateInputError, InvalidInputError, NumericalFailureError
from rdlab.groups import combinatorial_adjacency, line_labels
from rdlab.homotopy import TrackerConfig, find_singular_points, solve_total_degree
from rdlab.linalg import (
    exact_determinant,
    exact_nullspace,
    nullspace,
    projective_distance,
    rref,
    split_degenerate_conic,
    unit,
)
from rdlab.multipoly import (
    CompiledForm,
    MultiPoly,
    binary_restriction,
    coeffs_of_form,
    form_from_coeffs,
    monomials,
    pullback,
    ternary_quadratic_matrix,
)
from rdlab.poly import MODE_COMPLEX, Polynomial, roots
from rdlab.rng import SeedTree, as_generator, complex_normal

logger = logging.getLogger(__name__)

PLUCKER_PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


# ---------------------------------------------------------------------------
# Types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CubicSurface:
    coeffs: tuple
    smooth_checked: bool = False

    def __post_init__(self) -> None:
        if len(self.coeffs) != 20:
            raise InvalidInputError(f"a cubic surface needs 20 coefficients, got {len(self.coeffs)}")
        if all(c == 0 for c in self.coeffs):
            raise InvalidInputError("cubic form is identically zero")

    @classmethod
    def from_form(cls, form: MultiPoly, smooth_checked: bool = False) -> "CubicSurface":
        if form.nvars != 4 or any(sum(e) != 3 for e in form.terms):
            raise InvalidInputError("not a homogeneous cubic in 4 variables")
        return cls(tuple(coeffs_of_form(form, 3)), smooth_checked)

    @property
    def form(self) -> MultiPoly:
        return form_from_coeffs(self.coeffs, 4, 3)

    @property
    def compiled(self) -> CompiledForm:
        return CompiledForm(self.form.normalized())

    def complex_coeffs(self) -> np.ndarray:
        return np.array([complex(c) for c in self.coeffs])


@dataclass(frozen=True)
class ProjLine:
    """Line in P^3 by Plücker coordinates p01, p02, p03, p12, p13, p23 (largest modulus = 1)."""

    plucker: tuple

    @classmethod
    def from_points(cls, p: Sequence, q: Sequence) -> "ProjLine":
        return cls.from_plucker(plucker_of(p, q))

    @classmethod
    def from_plucker(cls, coords: Sequence) -> "ProjLine":
        v = np.array([complex(c) for c in coords])
        k = int(np.argmax(np.abs(v)))
        if v[k] == 0:
            raise InvalidInputError("zero Plücker vector")
        return cls(tuple(complex(c) for c in v / v[k]))

    @property
    def vector(self) -> np.ndarray:
        return np.array(self.plucker, dtype=complex)

    def relation(self) -> complex:
        p01, p02, p03, p12, p13, p23 = self.plucker
        return p01 * p23 - p02 * p13 + p03 * p12

    def points(self) -> np.ndarray:
        """Orthonormal basis (2 x 4) of the line."""
        m = np.zeros((4, 4), dtype=complex)
        for (i, j), c in zip(PLUCKER_PAIRS, self.plucker):
            m[i, j] = c
            m[j, i] = -c
        u, _, _ = np.linalg.svd(m)
        return u[:, :2].T.copy()

    def meets(self, other: "ProjLine", tol: float = 1e-6) -> bool:
        return abs(plucker_pairing(unit(self.vector), unit(other.vector))) < tol


@dataclass
class LineConfiguration:
    lines: list
    adjacency: np.ndarray
    labels: Optional[list] = None
    diagnostics: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.lines)


@dataclass(frozen=True)
class DoubleSix:
    first: tuple
    second: tuple


@dataclass
class PencilResult:
    roots: list
    new_lines: list


# ---------------------------------------------------------------------------
# Line helpers
# ---------------------------------------------------------------------------


def plucker_of(p: Sequence, q: Sequence) -> list:
    return [p[i] * q[j] - p[j] * q[i] for i, j in PLUCKER_PAIRS]


def plucker_pairing(a: Sequence, b: Sequence):
    """Bilinear form vanishing exactly when two lines meet."""
    return a[0] * b[5] - a[1] * b[4] + a[2] * b[3] + a[3] * b[2] - a[4] * b[1] + a[5] * b[0]


def restriction_residual(surface: CubicSurface, line: ProjLine) -> float:
    """Largest coefficient of the normalized cubic restricted to an orthonormal basis of the line."""
    pts = line.points()
    coeffs = binary_restriction(surface.compiled, 3, pts[0], pts[1])
    return float(np.max(np.abs(coeffs)))


def polish_line(form: CompiledForm, p: np.ndarray, q: np.ndarray, iterations: int = 6) -> tuple[np.ndarray, np.ndarray]:
    """
    Newton on the 4 restriction coefficients, in the local chart where the
    two best-conditioned coordinates of (p, q) are fixed to the identity.
    """
    m = np.vstack([p, q]).astype(complex)
    pairs = list(combinations(range(4), 2))
    a, b = max(pairs, key=lambda ij: abs(np.linalg.det(m[:, list(ij)])))
    m = np.linalg.solve(m[:, [a, b]], m)
    c, d = [k for k in range(4) if k not in (a, b)]
    w = np.exp(2j * np.pi * np.arange(4) / 4)
    for _ in range(iterations):
        pts = m[0][None, :] + w[:, None] * m[1][None, :]
        vals = form(pts)
        coeffs = np.fft.fft(vals) / 4
        if np.max(np.abs(coeffs)) < 1e-15:
            break
        grads = form.gradient(pts)
        cols = np.stack([grads[:, c], grads[:, d], w * grads[:, c], w * grads[:, d]], axis=1)
        jac = np.fft.fft(cols, axis=0) / 4
        try:
            step = np.linalg.lstsq(jac, coeffs, rcond=None)[0]
        except np.linalg.LinAlgError:
            break
        m[0, c] -= step[0]
        m[0, d] -= step[1]
        m[1, c] -= step[2]
        m[1, d] -= step[3]
        if np.max(np.abs(step)) < 1e-15 * (1 + np.max(np.abs(m))):
            break
    return m[0], m[1]


def _sort_key(line: ProjLine) -> tuple:
    return tuple((round(c.real, 8), round(c.imag, 8)) for c in line.plucker)


def _add_unique(found: list, line: ProjLine, tol: float = LINE_DEDUP_TOL) -> bool:
    if any(projective_distance(line.vector, other.vector) < tol for other in found):
        return False
    found.append(line)
    return True


def line_adjacency(lines: Sequence[ProjLine], tol: float = 1e-6) -> np.ndarray:
    vecs = [unit(line.vector) for line in lines]
    n = len(vecs)
    adj = np.zeros((n, n), dtype=bool)
    for i, j in combinations(range(n), 2):
        meet = abs(plucker_pairing(vecs[i], vecs[j])) < tol
        adj[i, j] = adj[j, i] = meet
    return adj


def validate_configuration(adj: np.ndarray) -> list[str]:
    """Problems with a 27-line meeting graph; empty when it is the Schläfli pattern."""
    problems = []
    a = np.asarray(adj, dtype=int)
    if a.shape != (27, 27):
        return [f"expected 27 lines, got {a.shape[0]}"]
    if not np.array_equal(a, a.T):
        problems.append("adjacency not symmetric")
    if np.any(np.diag(a)):
        problems.append("nonzero diagonal")
    if not np.all(a.sum(axis=1) == 10):
        problems.append(f"row sums {sorted(set(a.sum(axis=1).tolist()))} instead of 10")
    comp = 1 - a - np.eye(27, dtype=int)
    common = comp @ comp
    if not np.all(comp.sum(axis=1) == 16):
        problems.append("complement is not 16-regular")
    elif not (np.all(common[comp == 1] == 10) and np.all(common[(a == 1)] == 8)):
        problems.append("complement is not strongly regular (27,16,10,8)")
    return problems


def _configuration(lines: list, labels: Optional[list] = None, adjacency: Optional[np.ndarray] = None) -> LineConfiguration:
    if labels is None:
        lines = sorted(lines, key=_sort_key)
    adj = adjacency if adjacency is not None else line_adjacency(lines)
    problems = validate_configuration(adj)
    if problems:
        raise NumericalFailureError("line configuration failed validation", {"problems": problems, "found": len(lines)})
    return LineConfiguration(list(lines), adj, labels)


# ---------------------------------------------------------------------------
# Example surfaces
# ---------------------------------------------------------------------------


def fermat_cubic() -> CubicSurface:
    x = [MultiPoly.variable(i, 4) for i in range(4)]
    return CubicSurface.from_form(sum((xi**3 for xi in x), MultiPoly(4)), smooth_checked=True)


def pentahedral_surface(a: Sequence) -> CubicSurface:
    """sum a_i X_i^3 on X_0 + ... + X_4 = 0, with X_4 eliminated."""
    if len(a) != 5:
        raise InvalidInputError(f"pentahedral form needs 5 coefficients, got {len(a)}")
    x = [MultiPoly.variable(i, 4) for i in range(4)]
    x4 = -(x[0] + x[1] + x[2] + x[3])
    form = MultiPoly(4)
    for coeff, xi in zip(a, x + [x4]):
        if coeff != 0:
            form = form + xi**3 * coeff
    return CubicSurface.from_form(form)


def clebsch_cubic() -> CubicSurface:
    return pentahedral_surface([1, 1, 1, 1, 1])


def random_cubic(rng: np.random.Generator) -> CubicSurface:
    return CubicSurface(tuple(complex(c) for c in complex_normal(rng, 20)))


def random_point_on_surface(surface: CubicSurface, rng: np.random.Generator) -> np.ndarray:
    """A point of the surface on a random line, polished to the point tolerance."""
    form = surface.compiled
    p, q = complex_normal(rng, 4), complex_normal(rng, 4)
    coeffs = binary_restriction(form, 3, p, q)
    poly = Polynomial(tuple(complex(c) for c in coeffs[::-1]), MODE_COMPLEX)
    t = roots(poly, tol=1e-8).roots[0]
    x = unit(p + t * q)
    for _ in range(4):
        g = form.gradient(x[None, :])[0]
        val = form(x[None, :])[0]
        x = unit(x - val * np.conj(g) / np.vdot(g, g))
    if abs(form(x[None, :])[0]) > POINT_ON_SURFACE_TOL:
        raise NumericalFailureError("could not place a point on the surface", {"residual": abs(form(x[None, :])[0])})
    return x


def is_smooth(surface: CubicSurface, rng: np.random.Generator) -> bool:
    return not find_singular_points(surface.form, rng)


def _require_smooth(surface: CubicSurface, rng: np.random.Generator) -> None:
    if surface.smooth_checked:
        return
    if not is_smooth(surface, rng):
        raise InvalidInputError("cubic surface is singular")


# ---------------------------------------------------------------------------
# Direct solve
# ---------------------------------------------------------------------------


def chart_equations(form: MultiPoly) -> list[MultiPoly]:
    """The 4 coefficients of f(s, t, αs + βt, γs + δt) as polynomials in (α, β, γ, δ)."""
    nv = 6
    a, b, c, d, s, t = (MultiPoly.variable(i, nv) for i in range(nv))
    composed = form.compose([s, t, a * s + b * t, c * s + d * t])
    buckets: dict[tuple, dict] = {}
    for exp, coeff in composed.terms.items():
        buckets.setdefault((exp[4], exp[5]), {})[exp[:4]] = coeff
    return [MultiPoly(4, buckets.get((3 - k, k), {})) for k in range(4)]


def _charts(tree: SeedTree) -> list[np.ndarray]:
    eye = np.eye(4, dtype=complex)
    swap = eye[:, [2, 3, 0, 1]]
    out = [eye, swap]
    for k in range(2):
        g = complex_normal(tree.child("chart", k).generator(), (4, 4))
        q, _ = np.linalg.qr(g)
        out.append(q)
    return out


def lines_on_cubic(
    surface: CubicSurface,
    seed: int = 0,
    config: Optional[TrackerConfig] = None,
) -> LineConfiguration:
    """All 27 lines by chart-wise total-degree homotopy (81 paths per chart)."""
    tree = SeedTree(seed).child("lines")
    _require_smooth(surface, tree.child("smooth").generator())
    form = surface.form.normalized()
    compiled = CompiledForm(form)
    found: list[ProjLine] = []
    charts_used = 0
    for k, mat in enumerate(_charts(tree)):
        charts_used += 1
        eqs = chart_equations(pullback(form, mat))
        result = solve_total_degree(eqs, tree.child("chart-solve", k).generator(), config)
        added = 0
        for sol in result.solutions:
            alpha, beta, gamma, delta = sol
            p = mat @ np.array([1, 0, alpha, gamma])
            q = mat @ np.array([0, 1, beta, delta])
            p, q = polish_line(compiled, p, q)
            line = ProjLine.from_points(p, q)
            if restriction_residual(surface, line) > LINE_RESIDUAL_TOL:
                continue
            added += _add_unique(found, line)
        logger.debug("chart %d: %d solutions, %d new lines", k, len(result.solutions), added)
        if len(found) >= 27:
            break
        logger.warning("chart %d left %d lines missing; trying the next chart", k, 27 - len(found))
    if len(found) != 27:
        raise NumericalFailureError("did not find 27 lines", {"found": len(found), "charts": charts_used})
    logger.info("lines_on_cubic: 27 lines from %d chart(s)", charts_used)
    cfg = _configuration(found)
    cfg.diagnostics["charts"] = charts_used
    return cfg


# ---------------------------------------------------------------------------
# Lines from one line
# ---------------------------------------------------------------------------


def _residual_conic(form: MultiPoly, basis: np.ndarray) -> np.ndarray:
    """Matrix of f(sP + tQ + uR) / u for basis rows P, Q, R."""
    subs = [MultiPoly.linear([complex(basis[k, i]) for k in range(3)], 3) for i in range(4)]
    composed = form.compose(subs)
    coeffs = {}
    for exp, c in composed.terms.items():
        if exp[2] >= 1:
            coeffs[(exp[0], exp[1], exp[2] - 1)] = c
    six = [coeffs.get(m, 0) for m in monomials(3, 2)]
    return ternary_quadratic_matrix(six)


def pencil_lines(surface: CubicSurface, line: ProjLine, rng: np.random.Generator) -> PencilResult:
    """
    The 10 further lines meeting `line`.

    Planes through the line are λ1 A1 - λ2 A2 = 0; the residual conic of each
    plane is singular at the 5 roots of a binary quintic in (λ1, λ2), and each
    singular conic splits into two lines.
    """
    form = surface.form.normalized()
    compiled = CompiledForm(form)
    pts = line.points()
    planes = nullspace(pts, 2)
    a1, a2 = planes[0], planes[1]
    r = np.linalg.lstsq(np.vstack([a1, a2]), np.eye(2), rcond=None)[0]
    r1, r2 = r[:, 0], r[:, 1]

    def basis(lam: np.ndarray) -> np.ndarray:
        return np.vstack([pts[0], pts[1], lam[1] * r1 + lam[0] * r2])

    g = complex_normal(rng, (2, 2))
    w = np.exp(2j * np.pi * np.arange(6) / 6)
    samples = [g @ np.array([1.0, z]) for z in w]
    dets = np.array([np.linalg.det(_residual_conic(form, basis(lam))) for lam in samples])
    coeffs = np.fft.fft(dets) / 6
    scale = np.max(np.abs(coeffs))
    if scale == 0:
        raise DegenerateInputError("lines_from_one", "the pencil discriminant vanishes identically")
    if abs(coeffs[5]) <= 1e-10 * scale:
        raise DegenerateInputError("lines_from_one", "pencil discriminant has degree below 5")
    quintic = Polynomial(tuple(complex(c) for c in coeffs[::-1]), MODE_COMPLEX)
    zs = list(roots(quintic, tol=1e-8).roots)
    for z1, z2 in combinations(zs, 2):
        if abs(z1 - z2) <= 1e-6 * (1 + abs(z1)):
            raise DegenerateInputError("lines_from_one", f"repeated pencil root near {z1:.6g}")
    lams = [g @ np.array([1.0, z]) for z in zs]
    new_lines = []
    for lam in lams:
        b = basis(lam)
        conic = _residual_conic(form, b)
        for cov in split_degenerate_conic(conic):
            plane_pts = nullspace(cov[None, :], 2)
            p, q = plane_pts[0] @ b, plane_pts[1] @ b
            p, q = polish_line(compiled, p, q)
            new_lines.append(ProjLine.from_points(p, q))
    return PencilResult([complex(z) for z in zs], new_lines)


def lines_from_one(surface: CubicSurface, line: ProjLine, seed: int = 0) -> LineConfiguration:
    """Complete one line to all 27 by re-running the pencil construction from new lines."""
    if restriction_residual(surface, line) > LINE_RESIDUAL_TOL:
        raise InvalidInputError("the seed line does not lie on the surface")
    tree = SeedTree(seed).child("lines-from-one")
    found = [line]
    first_pass = None
    k = 0
    while k < len(found) and len(found) < 27:
        result = pencil_lines(surface, found[k], tree.child("pencil", k).generator())
        for new in result.new_lines:
            if restriction_residual(surface, new) > LINE_RESIDUAL_TOL:
                raise NumericalFailureError("pencil line failed the residual check", {"pencil": k})
            _add_unique(found, new)
        if first_pass is None:
            first_pass = len(found)
        k += 1
    if len(found) != 27:
        raise NumericalFailureError("pencil construction did not reach 27 lines", {"found": len(found)})
    logger.info("lines_from_one: 27 lines after %d pencils (first pass %d)", k, first_pass)
    cfg = _configuration(found)
    cfg.diagnostics.update(pencils=k, first_pass=first_pass)
    return cfg


# ---------------------------------------------------------------------------
# Blow-up model
# ---------------------------------------------------------------------------


def _is_exact(values: Sequence) -> bool:
    return all(isinstance(v, (int, Fraction)) and not isinstance(v, bool) for v in values)


def _mono_values(point: Sequence, nvars: int, degree: int) -> list:
    out = []
    for exp in monomials(nvars, degree):
        v = 1
        for x, k in zip(point, exp):
            if k:
                v = v * x**k
        out.append(v)
    return out


def _check_general_position(points: list, exact: bool) -> None:
    for i, j, k in combinations(range(6), 3):
        rows = [points[i], points[j], points[k]]
        if exact:
            collinear = exact_determinant(rows) == 0
        else:
            m = np.array(rows, dtype=complex)
            collinear = abs(np.linalg.det(m)) <= 1e-10 * np.prod([np.linalg.norm(r) for r in m])
        if collinear:
            raise DegenerateInputError("blowup_cubic", f"points {i}, {j}, {k} are collinear")
    rows = [_mono_values(p, 3, 2) for p in points]
    if exact:
        on_conic = exact_determinant(rows) == 0
    else:
        sv = np.linalg.svd(np.array(rows, dtype=complex), compute_uv=False)
        on_conic = sv[-1] <= 1e-10 * sv[0]
    if on_conic:
        raise DegenerateInputError("blowup_cubic", "the 6 points lie on a conic")


def _nullspace_any(rows: list, dim: int, exact: bool) -> list:
    if exact:
        basis = exact_nullspace(rows)
        if len(basis) != dim:
            raise DegenerateInputError("blowup_cubic", f"expected a {dim}-dimensional kernel, got {len(basis)}")
        return basis
    return [list(v) for v in nullspace(np.array(rows, dtype=complex), dim)]


class _CubicMap:
    """z -> (f_0(z), ..., f_3(z)) for a basis of cubics through the points."""

    def __init__(self, basis: list) -> None:
        self.basis = basis

    def __call__(self, z: Sequence) -> list:
        vals = _mono_values(z, 3, 3)
        return [sum(c * v for c, v in zip(f, vals)) for f in self.basis]

    def jacobian(self, z: Sequence) -> list[list]:
        """4 x 3 matrix of gradients of the f_k at z."""
        out = []
        for f in self.basis:
            poly = MultiPoly(3, dict(zip(monomials(3, 3), f)))
            out.append([poly.diff(j).evaluate(z) for j in range(3)])
        return out


def _column_space_pair(mat: list, exact: bool) -> tuple[list, list]:
    """Two spanning columns of a rank-2 4 x 3 matrix."""
    if exact:
        cols = [[row[j] for row in mat] for j in range(3)]
        _, pivots = rref([[mat[i][j] for j in range(3)] for i in range(4)])
        if len(pivots) != 2:
            raise DegenerateInputError("blowup_cubic", f"gradient matrix has rank {len(pivots)}")
        return cols[pivots[0]], cols[pivots[1]]
    u, _, _ = np.linalg.svd(np.array(mat, dtype=complex))
    return list(u[:, 0]), list(u[:, 1])


def _conic_points(conic: list, base: Sequence, directions: list) -> list:
    """Second intersections of lines through `base` with the conic q."""
    def bil(x, y):
        return sum(conic[i][j] * x[i] * y[j] for i in range(3) for j in range(3))

    out = []
    for d in directions:
        qd, b = bil(d, d), bil(base, d)
        out.append([qd * base[i] - 2 * b * d[i] for i in range(3)])
    return out


def _spans_line(p: list, q: list, exact: bool) -> bool:
    pl = plucker_of(p, q)
    if exact:
        return any(c != 0 for c in pl)
    size = float(np.linalg.norm(np.array(p, dtype=complex)) * np.linalg.norm(np.array(q, dtype=complex)))
    return size > 0.0 and float(np.linalg.norm(np.array(pl, dtype=complex))) > RANK_DROP_TOL * size


def _small_vector(rng: np.random.Generator, size: int, exact: bool) -> list:
    v = [int(x) for x in rng.integers(-9, 10, size=size)]
    return [Fraction(x) for x in v] if exact else [complex(x) for x in v]


def _conic_line(phi: _CubicMap, conic: list, base: Sequence, rng: np.random.Generator, exact: bool, label: str) -> tuple[list, list]:
    """Images of two conic points reached from `base` along random directions."""
    for _ in range(BLOWUP_RETRIES):
        dirs = [_small_vector(rng, 3, exact) for _ in range(2)]
        if not all(any(d) for d in dirs):
            continue
        w1, w2 = _conic_points(conic, base, dirs)
        pair = (phi(w1), phi(w2))
        if _spans_line(*pair, exact):
            return pair
    raise DegenerateInputError("blowup_cubic", f"no pair of conic points spans the line {label}")


def _chord_line(phi: _CubicMap, zi: Sequence, zj: Sequence, rng: np.random.Generator, exact: bool, label: str) -> tuple[list, list]:
    """Images of zi + s zj for two random distinct nonzero s."""
    for _ in range(BLOWUP_RETRIES):
        s, t = (int(v) for v in rng.choice(np.r_[-9:0, 1:10], size=2, replace=False))
        s, t = (Fraction(s), Fraction(t)) if exact else (complex(s), complex(t))
        pair = (phi([a + s * b for a, b in zip(zi, zj)]), phi([a + t * b for a, b in zip(zi, zj)]))
        if _spans_line(*pair, exact):
            return pair
    raise DegenerateInputError("blowup_cubic", f"no pair of chord points spans the line {label}")


def _conic_matrix(coeffs6: list) -> list[list]:
    a, b, c, d, e, f = coeffs6
    half = Fraction(1, 2) if _is_exact(coeffs6) else 0.5
    return [[a, b * half, c * half], [b * half, d, e * half], [c * half, e * half, f]]


def blowup_cubic(points: Sequence[Sequence], seed: int = 0) -> tuple[CubicSurface, LineConfiguration]:
    """
    Cubic surface and labeled lines of the blow-up of P^2 at 6 points.

    Exact rational points keep every step exact, so the meeting matrix is
    computed without tolerances.
    """
    pts = [list(p) for p in points]
    if len(pts) != 6 or any(len(p) != 3 for p in pts):
        raise InvalidInputError("blowup_cubic needs 6 points of P^2")
    exact = all(_is_exact(p) for p in pts)
    if exact:
        pts = [[Fraction(x) for x in p] for p in pts]
    else:
        pts = [[complex(x) for x in p] for p in pts]
    _check_general_position(pts, exact)
    rng = as_generator(seed, "blowup")

    cubics = _nullspace_any([_mono_values(p, 3, 3) for p in pts], 4, exact)
    phi = _CubicMap(cubics)

    samples = []
    while len(samples) < 30:
        z = [int(v) for v in rng.integers(-9, 10, size=3)]
        if not any(z):
            continue
        z = [Fraction(v) for v in z] if exact else [complex(v) for v in z]
        image = phi(z)
        if any(image):
            samples.append(image)
    rows = [_mono_values(x, 4, 3) for x in samples]
    surface_coeffs = _nullspace_any(rows, 1, exact)[0]
    if exact:
        scale = max(surface_coeffs, key=abs)
        surface = CubicSurface(tuple(c / scale for c in surface_coeffs))
    else:
        arr = np.array(surface_coeffs, dtype=complex)
        surface = CubicSurface(tuple(complex(c) for c in arr / arr[np.argmax(np.abs(arr))]))

    lines_pq: list[tuple[list, list]] = []
    for i in range(6):
        lines_pq.append(_column_space_pair(phi.jacobian(pts[i]), exact))
    for i in range(6):
        others = [pts[j] for j in range(6) if j != i]
        conic6 = _nullspace_any([_mono_values(p, 3, 2) for p in others], 1, exact)[0]
        conic_rng = as_generator(seed, "blowup", "conic", i)
        lines_pq.append(_conic_line(phi, _conic_matrix(conic6), others[0], conic_rng, exact, f"b{i}"))
    for i, j in combinations(range(6), 2):
        chord_rng = as_generator(seed, "blowup", "chord", i, j)
        lines_pq.append(_chord_line(phi, pts[i], pts[j], chord_rng, exact, f"c{i}{j}"))

    pl = [plucker_of(p, q) for p, q in lines_pq]
    if exact:
        if any(all(c == 0 for c in v) for v in pl):
            raise DegenerateInputError("blowup_cubic", "a labeled line degenerated to a point")
        adj = np.zeros((27, 27), dtype=bool)
        for a, b in combinations(range(27), 2):
            adj[a, b] = adj[b, a] = plucker_pairing(pl[a], pl[b]) == 0
    else:
        adj = None
    lines = [ProjLine.from_plucker([complex(c) for c in v]) for v in pl]
    cfg = _configuration(lines, labels=line_labels(), adjacency=adj)
    cfg.diagnostics["exact"] = exact
    for line in lines:
        res = restriction_residual(surface, line)
        if res > LINE_RESIDUAL_TOL:
            raise NumericalFailureError("blow-up line is not on the fitted surface", {"residual": res})
    return surface, cfg


def random_six_points(rng: np.random.Generator, bound: int = 12) -> list[list[Fraction]]:
    """Six random rational points of P^2 with integer coordinates."""
    return [[Fraction(int(v)) for v in rng.integers(-bound, bound + 1, size=3)] for _ in range(6)]


# ---------------------------------------------------------------------------
# Double-sixes
# ---------------------------------------------------------------------------


def sixers(cfg: LineConfiguration) -> list[tuple[int, ...]]:
    """All sets of 6 pairwise skew lines."""
    problems = validate_configuration(cfg.adjacency)
    if problems:
        raise InvalidInputError(f"invalid line configuration: {problems}")
    adj = cfg.adjacency
    n = len(adj)
    out: list[tuple[int, ...]] = []

    def extend(chosen: list[int], start: int) -> None:
        if len(chosen) == 6:
            out.append(tuple(chosen))
            return
        for k in range(start, n):
            if all(not adj[k, c] for c in chosen):
                chosen.append(k)
                extend(chosen, k + 1)
                chosen.pop()

    extend([], 0)
    return out


def double_sixes(cfg: LineConfiguration) -> list[DoubleSix]:
    """Pairs of disjoint sixers where each line meets exactly 5 lines of the other sixer."""
    sx = sixers(cfg)
    adj = cfg.adjacency
    out = []
    for a_idx, a in enumerate(sx):
        for b in sx[a_idx + 1:]:
            if set(a) & set(b):
                continue
            partners = []
            for x in a:
                skew = [y for y in b if not adj[x, y]]
                if len(skew) != 1:
                    break
                partners.append(skew[0])
            else:
                if len(set(partners)) == 6:
                    out.append(DoubleSix(tuple(a), tuple(partners)))
    return out


def label_configuration_from_double_six(cfg: LineConfiguration, six: DoubleSix) -> LineConfiguration:
    """
    Relabel a configuration in blow-up classes: a_i = six.first[i],
    b_i = six.second[i], c_ij = the remaining line meeting a_i and a_j.
    """
    adj = cfg.adjacency
    a, b = six.first, six.second
    used = set(a) | set(b)
    rest = [k for k in range(27) if k not in used]
    order = list(a) + list(b)
    for i, j in combinations(range(6), 2):
        found = [k for k in rest if adj[k, a[i]] and adj[k, a[j]]]
        if len(found) != 1:
            raise InvalidInputError(f"no unique line meeting a{i} and a{j} ({len(found)} candidates)")
        order.append(found[0])
    relabeled = adj[np.ix_(order, order)]
    if not np.array_equal(relabeled, combinatorial_adjacency()):
        raise InvalidInputError("double-six does not induce the blow-up incidence pattern")
    return LineConfiguration([cfg.lines[k] for k in order], relabeled, line_labels(), dict(cfg.diagnostics))
