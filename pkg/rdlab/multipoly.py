# -*- coding: utf-8 -*-
"""
Sparse multivariate polynomials and homogeneous-form helpers.

A MultiPoly is a map from exponent tuples to scalars; zero terms are never
stored. Cubic surfaces and plane quartics are carried as homogeneous
MultiPolys whose coefficient vectors follow `monomials(nvars, degree)`:
decreasing lexicographic order of exponents, so for 4 variables in degree 3
the list starts x0^3, x0^2 x1, x0^2 x2, x0^2 x3, x0 x1^2, ...
"""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Iterable, Mapping, Optional, Sequence

import numpy as np


class MultiPoly:
    """Sparse polynomial in `nvars` variables."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Optional[Mapping[tuple, object]] = None) -> None:
        self.nvars = nvars
        clean: dict[tuple, object] = {}
        for exp, coeff in (terms or {}).items():
            if len(exp) != nvars:
                raise ValueError(f"exponent {exp} does not match {nvars} variables")
            if coeff != 0:
                clean[tuple(exp)] = coeff
        self.terms = clean

    @classmethod
    def constant(cls, value, nvars: int) -> "MultiPoly":
        return cls(nvars, {(0,) * nvars: value})

    @classmethod
    def variable(cls, index: int, nvars: int) -> "MultiPoly":
        exp = [0] * nvars
        exp[index] = 1
        return cls(nvars, {tuple(exp): 1})

    @classmethod
    def linear(cls, coeffs: Sequence, nvars: Optional[int] = None) -> "MultiPoly":
        """sum_j coeffs[j] * x_j."""
        nv = len(coeffs) if nvars is None else nvars
        terms = {}
        for j, c in enumerate(coeffs):
            exp = [0] * nv
            exp[j] = 1
            terms[tuple(exp)] = c
        return cls(nv, terms)

    # -- properties ---------------------------------------------------------

    @property
    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def is_zero(self) -> bool:
        return not self.terms

    def degree_in(self, index: int) -> int:
        return max((e[index] for e in self.terms), default=0)

    def __len__(self) -> int:
        return len(self.terms)

    def __repr__(self) -> str:
        return f"MultiPoly(nvars={self.nvars}, terms={len(self.terms)})"

    # -- arithmetic ---------------------------------------------------------

    def _lift(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        return MultiPoly.constant(other, self.nvars)

    def __add__(self, other) -> "MultiPoly":
        other = self._lift(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return MultiPoly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "MultiPoly":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "MultiPoly":
        return self._lift(other) - self

    def __mul__(self, other) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            return MultiPoly(self.nvars, {e: c * other for e, c in self.terms.items()})
        other = self._lift(other)
        out: dict[tuple, object] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MultiPoly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MultiPoly":
        out = MultiPoly.constant(1, self.nvars)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def diff(self, index: int) -> "MultiPoly":
        out = {}
        for e, c in self.terms.items():
            if e[index] == 0:
                continue
            ne = list(e)
            ne[index] -= 1
            out[tuple(ne)] = c * e[index]
        return MultiPoly(self.nvars, out)

    def map_coefficients(self, fn) -> "MultiPoly":
        return MultiPoly(self.nvars, {e: fn(c) for e, c in self.terms.items()})

    # -- evaluation and substitution ---------------------------------------

    def evaluate(self, point: Sequence) -> object:
        total = 0
        for e, c in self.terms.items():
            term = c
            for x, k in zip(point, e):
                if k:
                    term = term * x**k
            total = total + term
        return total

    def substitute(self, values: Mapping[int, object], keep: Sequence[int]) -> "MultiPoly":
        """Fix the variables in `values`; the result lives in the variables `keep`, in that order."""
        out: dict[tuple, object] = {}
        for e, c in self.terms.items():
            term = c
            for idx, val in values.items():
                if e[idx]:
                    term = term * val ** e[idx]
            ne = tuple(e[i] for i in keep)
            out[ne] = out.get(ne, 0) + term
        return MultiPoly(len(keep), out)

    def compose(self, subs: Sequence["MultiPoly"]) -> "MultiPoly":
        """Replace variable i by subs[i]; all subs share one variable count."""
        if len(subs) != self.nvars:
            raise ValueError("need one substitution per variable")
        nv = subs[0].nvars
        powers: list[dict[int, MultiPoly]] = [{0: MultiPoly.constant(1, nv)} for _ in subs]

        def power(i: int, k: int) -> MultiPoly:
            cache = powers[i]
            if k not in cache:
                cache[k] = power(i, k - 1) * subs[i]
            return cache[k]

        out = MultiPoly(nv)
        for e, c in self.terms.items():
            term = MultiPoly.constant(c, nv)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            out = out + term
        return out

    def extend(self, nvars: int, offset: int = 0) -> "MultiPoly":
        """Embed into a ring with more variables, shifting indices by offset."""
        out = {}
        for e, c in self.terms.items():
            ne = [0] * nvars
            ne[offset:offset + self.nvars] = e
            out[tuple(ne)] = c
        return MultiPoly(nvars, out)

    def max_abs_coefficient(self) -> float:
        return max((abs(complex(c)) for c in self.terms.values()), default=0.0)

    def normalized(self) -> "MultiPoly":
        scale = self.max_abs_coefficient()
        if scale == 0.0:
            return self
        return self.map_coefficients(lambda c: complex(c) / scale)


# ---------------------------------------------------------------------------
# Homogeneous forms
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def monomials(nvars: int, degree: int) -> tuple[tuple[int, ...], ...]:
    """Exponent vectors of degree `degree` in decreasing lexicographic order."""
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        exp = [0] * nvars
        for i in combo:
            exp[i] += 1
        out.append(tuple(exp))
    return tuple(out)


def form_from_coeffs(coeffs: Sequence, nvars: int, degree: int) -> MultiPoly:
    mons = monomials(nvars, degree)
    if len(coeffs) != len(mons):
        raise ValueError(f"expected {len(mons)} coefficients, got {len(coeffs)}")
    return MultiPoly(nvars, dict(zip(mons, coeffs)))


def coeffs_of_form(form: MultiPoly, degree: int) -> list:
    return [form.terms.get(m, 0) for m in monomials(form.nvars, degree)]


def pullback(form: MultiPoly, matrix: np.ndarray) -> MultiPoly:
    """The form f(M y) in the new variables y."""
    m = np.asarray(matrix, dtype=complex)
    subs = [MultiPoly.linear([complex(v) for v in m[i]], m.shape[1]) for i in range(m.shape[0])]
    return form.compose(subs)


class CompiledForm:
    """Vectorized evaluation of a MultiPoly with its gradient and Hessian."""

    def __init__(self, poly: MultiPoly) -> None:
        self.poly = poly
        self.nvars = poly.nvars
        items = sorted(poly.terms.items())
        self.exps = np.array([e for e, _ in items], dtype=int).reshape(len(items), poly.nvars)
        self.coeffs = np.array([complex(c) for _, c in items], dtype=complex)
        self._grad: Optional[list[CompiledForm]] = None
        self._hess: Optional[list[list[CompiledForm]]] = None

    def __call__(self, points: np.ndarray) -> np.ndarray:
        x = np.asarray(points, dtype=complex)
        if self.coeffs.size == 0:
            return np.zeros(x.shape[:-1], dtype=complex)
        mons = np.prod(x[..., None, :] ** self.exps, axis=-1)
        return mons @ self.coeffs

    def gradient(self, points: np.ndarray) -> np.ndarray:
        if self._grad is None:
            self._grad = [CompiledForm(self.poly.diff(i)) for i in range(self.nvars)]
        return np.stack([g(points) for g in self._grad], axis=-1)

    def hessian(self, points: np.ndarray) -> np.ndarray:
        if self._hess is None:
            grads = [self.poly.diff(i) for i in range(self.nvars)]
            self._hess = [[CompiledForm(g.diff(j)) for j in range(self.nvars)] for g in grads]
        return np.stack([np.stack([h(points) for h in row], axis=-1) for row in self._hess], axis=-2)


def binary_restriction(form: CompiledForm, degree: int, p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """
    Coefficients of g(s, t) = f(s p + t q), ordered s^d, s^{d-1} t, ..., t^d.

    g is sampled at (1, w^k) for the (d+1)-th roots of unity w and recovered
    by an inverse DFT, which is exact for degree <= d.
    """
    n = degree + 1
    w = np.exp(2j * np.pi * np.arange(n) / n)
    pts = np.asarray(p, dtype=complex)[None, :] + w[:, None] * np.asarray(q, dtype=complex)[None, :]
    vals = form(pts)
    return np.fft.fft(vals) / n


def ternary_quadratic_matrix(coeffs6: Sequence[complex]) -> np.ndarray:
    """Symmetric matrix of a conic with coefficients in monomial order x^2, xy, xz, y^2, yz, z^2."""
    a, b, c, d, e, f = (complex(v) for v in coeffs6)
    return np.array([[a, b / 2, c / 2], [b / 2, d, e / 2], [c / 2, e / 2, f]], dtype=complex)


def evaluation_rows(points: np.ndarray, nvars: int, degree: int) -> np.ndarray:
    """Rows of monomial values at each point, in `monomials` order."""
    exps = np.array(monomials(nvars, degree), dtype=int)
    pts = np.asarray(points)
    return np.prod(pts[:, None, :] ** exps[None, :, :], axis=-1)


def random_form(rng: np.random.Generator, nvars: int, degree: int) -> list[complex]:
    n = len(monomials(nvars, degree))
    vals = (rng.standard_normal(n) + 1j * rng.standard_normal(n)) / np.sqrt(2.0)
    return [complex(v) for v in vals]


def iter_terms(poly: MultiPoly) -> Iterable[tuple[tuple, object]]:
    return sorted(poly.terms.items())
