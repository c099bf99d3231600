# -*- coding: utf-8 -*-
"""
Univariate polynomial kernel.

Two scalar modes share one type:
- "rational": coefficients are fractions.Fraction, every operation is exact
- "complex": coefficients are Python complex floats

Coefficients are stored leading first, constant last, so x^2 - 3x + 2 is
(1, -3, 2). Structural computations (resultants, Newton identities,
Tschirnhaus coefficient formulas) stay exact; only `roots` leaves the
rationals.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from rdlab.constants import DEFAULT_ROOT_TOL
from rdlab.errors import InvalidInputError, NumericalFailureError

logger = logging.getLogger(__name__)

MODE_RATIONAL = "rational"
MODE_COMPLEX = "complex"

Scalar = Union[Fraction, complex]

_EPS = float(np.finfo(float).eps)


def to_fraction(value) -> Fraction:
    """Parse ints, Fractions, exact floats and 'p/q' strings."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InvalidInputError(f"not a rational coefficient: {value!r}")
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise InvalidInputError(f"not a rational coefficient: {value!r}")
    raise InvalidInputError(f"not a rational coefficient: {value!r}")


def _is_exact(value) -> bool:
    return isinstance(value, (Fraction, int, str)) and not isinstance(value, bool)


def _coerce(value, mode: str) -> Scalar:
    if mode == MODE_RATIONAL:
        return to_fraction(value)
    if isinstance(value, Fraction):
        return complex(float(value))
    if isinstance(value, str):
        return complex(float(to_fraction(value)))
    return complex(value)


def _is_zero(value: Scalar) -> bool:
    return value == 0


@dataclass(frozen=True)
class Polynomial:
    """Univariate polynomial, leading coefficient first."""

    coeffs: tuple
    mode: str = MODE_RATIONAL

    def __post_init__(self) -> None:
        if self.mode not in (MODE_RATIONAL, MODE_COMPLEX):
            raise InvalidInputError(f"unknown scalar mode {self.mode!r}")
        cs = [_coerce(c, self.mode) for c in self.coeffs]
        while len(cs) > 1 and _is_zero(cs[0]):
            cs.pop(0)
        if not cs:
            cs = [_coerce(0, self.mode)]
        object.__setattr__(self, "coeffs", tuple(cs))

    # -- construction -------------------------------------------------------

    @classmethod
    def from_coeffs(cls, coeffs: Iterable, mode: Optional[str] = None) -> "Polynomial":
        """Build from leading-first coefficients; mode defaults to rational when all are exact."""
        cs = list(coeffs)
        if mode is None:
            mode = MODE_RATIONAL if all(_is_exact(c) for c in cs) else MODE_COMPLEX
        return cls(tuple(cs), mode)

    @classmethod
    def from_roots(cls, roots: Iterable, mode: Optional[str] = None) -> "Polynomial":
        rs = list(roots)
        if mode is None:
            mode = MODE_RATIONAL if all(_is_exact(r) for r in rs) else MODE_COMPLEX
        out = cls((1,), mode)
        for r in rs:
            out = out * cls((1, -_coerce(r, mode)), mode)
        return out

    @classmethod
    def monomial(cls, degree: int, coeff=1, mode: str = MODE_RATIONAL) -> "Polynomial":
        return cls((coeff,) + (0,) * degree, mode)

    # -- basic properties ---------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Scalar:
        return self.coeffs[0]

    @property
    def is_exact(self) -> bool:
        return self.mode == MODE_RATIONAL

    @property
    def is_monic(self) -> bool:
        return self.coeffs[0] == 1

    def is_zero(self) -> bool:
        return self.degree == 0 and _is_zero(self.coeffs[0])

    def coefficient(self, k: int) -> Scalar:
        """a_k in x^n + a_1 x^{n-1} + ... + a_n (index from the leading end)."""
        return self.coeffs[k]

    def monic(self) -> "Polynomial":
        if _is_zero(self.leading):
            raise InvalidInputError("zero polynomial has no monic form")
        lead = self.leading
        return Polynomial(tuple(c / lead for c in self.coeffs), self.mode)

    def to_complex(self) -> "Polynomial":
        if self.mode == MODE_COMPLEX:
            return self
        return Polynomial(tuple(complex(float(c)) for c in self.coeffs), MODE_COMPLEX)

    def as_array(self) -> np.ndarray:
        return np.array([complex(c) if not isinstance(c, Fraction) else complex(float(c)) for c in self.coeffs])

    # -- arithmetic ---------------------------------------------------------

    def _common_mode(self, other: "Polynomial") -> str:
        return MODE_RATIONAL if (self.is_exact and other.is_exact) else MODE_COMPLEX

    def __add__(self, other: "Polynomial") -> "Polynomial":
        mode = self._common_mode(other)
        a = [_coerce(c, mode) for c in self.coeffs]
        b = [_coerce(c, mode) for c in other.coeffs]
        n = max(len(a), len(b))
        a = [_coerce(0, mode)] * (n - len(a)) + a
        b = [_coerce(0, mode)] * (n - len(b)) + b
        return Polynomial(tuple(x + y for x, y in zip(a, b)), mode)

    def __neg__(self) -> "Polynomial":
        return Polynomial(tuple(-c for c in self.coeffs), self.mode)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: Union["Polynomial", Scalar, int]) -> "Polynomial":
        if not isinstance(other, Polynomial):
            return self.scale(other)
        mode = self._common_mode(other)
        a = [_coerce(c, mode) for c in self.coeffs]
        b = [_coerce(c, mode) for c in other.coeffs]
        out = [_coerce(0, mode)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if _is_zero(x):
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        return Polynomial(tuple(out), mode)

    __rmul__ = __mul__

    def scale(self, c) -> "Polynomial":
        mode = self.mode if _is_exact(c) or self.mode == MODE_COMPLEX else MODE_COMPLEX
        cc = _coerce(c, mode)
        return Polynomial(tuple(_coerce(x, mode) * cc for x in self.coeffs), mode)

    def __pow__(self, k: int) -> "Polynomial":
        out = Polynomial((1,), self.mode)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __call__(self, x):
        acc = _coerce(0, self.mode) if _is_exact(x) or isinstance(x, Fraction) else 0j
        for c in self.coeffs:
            acc = acc * x + c
        return acc

    def evaluate_array(self, z: np.ndarray) -> np.ndarray:
        return np.polyval(self.as_array(), z)

    def derivative(self) -> "Polynomial":
        n = self.degree
        if n == 0:
            return Polynomial((0,), self.mode)
        return Polynomial(tuple(c * (n - i) for i, c in enumerate(self.coeffs[:-1])), self.mode)

    def divmod(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        if other.is_zero():
            raise InvalidInputError("division by the zero polynomial")
        mode = self._common_mode(other)
        rem = [_coerce(c, mode) for c in self.coeffs]
        div = [_coerce(c, mode) for c in other.coeffs]
        if len(rem) < len(div):
            return Polynomial((0,), mode), Polynomial(tuple(rem), mode)
        quot = []
        lead = div[0]
        while len(rem) >= len(div):
            factor = rem[0] / lead
            quot.append(factor)
            for i, d in enumerate(div):
                rem[i] -= factor * d
            rem.pop(0)
        return Polynomial(tuple(quot), mode), Polynomial(tuple(rem) if rem else (0,), mode)

    def shift(self, c) -> "Polynomial":
        """p(x + c) by Horner composition."""
        mode = self.mode if _is_exact(c) else MODE_COMPLEX
        lin = Polynomial((1, c), mode)
        out = Polynomial((0,), mode)
        for coeff in self.coeffs:
            out = out * lin + Polynomial((coeff,), mode)
        return out

    def scale_roots(self, lam) -> "Polynomial":
        """Monic polynomial whose roots are lam times the roots of self."""
        mode = self.mode if _is_exact(lam) else MODE_COMPLEX
        lam_c = _coerce(lam, mode)
        base = self.monic()
        out = []
        power = _coerce(1, mode)
        for c in base.coeffs:
            out.append(_coerce(c, mode) * power)
            power = power * lam_c
        return Polynomial(tuple(out), mode)

    def __repr__(self) -> str:
        return f"Polynomial({list(self.coeffs)!r}, mode={self.mode!r})"


@dataclass(frozen=True)
class RootSet:
    """
    All roots of a polynomial.

    `residuals[i]` is |p(root_i)|. `backward_errors[i]` is the same value
    divided by sum |a_k| |root_i|^k. `tolerance` bounds the backward errors.
    """

    roots: tuple
    residuals: tuple
    tolerance: float
    flags: tuple = ()
    backward_errors: tuple = ()

    def __len__(self) -> int:
        return len(self.roots)

    @property
    def max_residual(self) -> float:
        return max(self.residuals) if self.residuals else 0.0

    @property
    def max_backward_error(self) -> float:
        return max(self.backward_errors) if self.backward_errors else 0.0


def root_residual(p: Polynomial, z: complex) -> float:
    """|p(z)|."""
    return float(abs(np.polyval(p.as_array(), z)))


def backward_error(p: Polynomial, z: complex) -> float:
    """|p(z)| scaled by sum |a_k| |z|^k, the relative backward error of z as a root."""
    c = p.as_array()
    val = abs(np.polyval(c, z))
    scale = float(np.polyval(np.abs(c), abs(z)))
    if scale == 0.0:
        return 0.0
    return float(val / scale)


def _fujiwara_bound(c: np.ndarray) -> float:
    n = len(c) - 1
    ratios = [abs(c[k] / c[0]) ** (1.0 / k) for k in range(1, n + 1)]
    ratios[-1] = ratios[-1] * (0.5 ** (1.0 / n))
    return 2.0 * max(ratios) if ratios else 1.0


def _aberth(c: np.ndarray, max_iter: int) -> np.ndarray:
    n = len(c) - 1
    dc = c[:-1] * np.arange(n, 0, -1)
    absc = np.abs(c)
    radius = _fujiwara_bound(c)
    if radius == 0.0:
        radius = 1.0
    angles = 2.0 * np.pi * np.arange(n) / n + 0.4
    z = radius * np.exp(1j * angles)
    converged = np.zeros(n, dtype=bool)
    target = 4.0 * _EPS * (n + 1)
    for _ in range(max_iter):
        pz = np.polyval(c, z)
        dpz = np.polyval(dc, z)
        scale = np.polyval(absc, np.abs(z))
        backward = np.abs(pz) / np.where(scale == 0.0, 1.0, scale)
        converged |= backward <= target
        if converged.all():
            break
        safe = dpz != 0
        ratio = np.where(safe, pz / np.where(safe, dpz, 1.0), 0.0)
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        inv = 1.0 / diff
        np.fill_diagonal(inv, 0.0)
        repel = inv.sum(axis=1)
        w = ratio / (1.0 - ratio * repel)
        w = np.where(safe, w, 1e-8 * (1.0 + np.abs(z)))
        w[converged] = 0.0
        z = z - w
        if np.all(np.abs(w) <= 4.0 * _EPS * np.maximum(1.0, np.abs(z))):
            break
    return z


def roots(p: Polynomial, tol: float = DEFAULT_ROOT_TOL, max_iter: int = 800) -> RootSet:
    """
    All complex roots with multiplicity by Aberth-Ehrlich simultaneous iteration.

    Initial guesses sit on the Fujiwara-bound circle at angles 2πk/n + 0.4,
    so the output is deterministic. Exact zero roots are split off first.
    Acceptance is on the backward error (see `backward_error`); the
    absolute |p(root)| is reported alongside.
    """
    if p.degree < 1:
        raise InvalidInputError("roots requires degree >= 1")
    if _is_zero(p.leading):
        raise InvalidInputError("leading coefficient is zero")
    cs = list(p.coeffs)
    zeros = 0
    while len(cs) > 1 and _is_zero(cs[-1]):
        cs.pop()
        zeros += 1
    found: list[complex] = [0j] * zeros
    core = Polynomial(tuple(cs), p.mode)
    if core.degree == 1:
        c = core.as_array()
        found.append(complex(-c[1] / c[0]))
    elif core.degree > 1:
        c = core.as_array()
        c = c / c[0]
        found.extend(complex(z) for z in _aberth(c, max_iter))
    found.sort(key=lambda z: (round(z.real, 12), round(z.imag, 12)))
    errors = tuple(backward_error(p, z) for z in found)
    worst = max(errors) if errors else 0.0
    if worst > tol:
        logger.debug("root finder backward error %.3e above tolerance %.3e", worst, tol)
        raise NumericalFailureError(
            "root finder did not converge",
            {"worst_backward_error": worst, "tolerance": tol, "degree": p.degree},
        )
    residuals = tuple(root_residual(p, z) for z in found)
    return RootSet(tuple(found), residuals, tol, (), errors)


def newton_polish(p: Polynomial, z: complex, iterations: int = 3) -> complex:
    """A few Newton steps on p; stops early when the derivative vanishes."""
    c = p.as_array()
    dc = np.polyder(c) if len(c) > 1 else np.array([0j])
    for _ in range(iterations):
        d = np.polyval(dc, z)
        if d == 0:
            break
        step = np.polyval(c, z) / d
        z = z - step
        if abs(step) <= 4.0 * _EPS * max(1.0, abs(z)):
            break
    return complex(z)


# ---------------------------------------------------------------------------
# Resultants and discriminants
# ---------------------------------------------------------------------------


def sylvester_matrix(p: Polynomial, q: Polynomial) -> list[list]:
    """Rows: deg(q) shifts of p, then deg(p) shifts of q."""
    m, n = p.degree, q.degree
    size = m + n
    zero = _coerce(0, p._common_mode(q))
    rows = []
    for i in range(n):
        row = [zero] * size
        for j, c in enumerate(p.coeffs):
            row[i + j] = c
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        for j, c in enumerate(q.coeffs):
            row[i + j] = c
        rows.append(row)
    return rows


def bareiss_determinant(matrix: Sequence[Sequence]) -> Fraction:
    """Fraction-free Gaussian elimination with row pivoting."""
    a = [[to_fraction(x) for x in row] for row in matrix]
    n = len(a)
    if n == 0:
        return Fraction(1)
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return Fraction(0)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def resultant(p: Polynomial, q: Polynomial) -> Scalar:
    """det(Sylvester(p, q)); exact when both inputs are rational."""
    if p.degree < 1 and q.degree < 1:
        raise InvalidInputError("resultant of two constants is undefined")
    mat = sylvester_matrix(p, q)
    if p.is_exact and q.is_exact:
        return bareiss_determinant(mat)
    return complex(np.linalg.det(np.array(mat, dtype=complex)))


def discriminant(p: Polynomial) -> Scalar:
    """(-1)^{n(n-1)/2} Res(p, p') / a_0 with a_0 the leading coefficient."""
    n = p.degree
    if n < 2:
        raise InvalidInputError("discriminant requires degree >= 2")
    res = resultant(p, p.derivative())
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * res / p.leading


def gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    """Monic gcd by the Euclidean algorithm (exact mode only)."""
    if not (p.is_exact and q.is_exact):
        raise InvalidInputError("gcd is only available in exact mode")
    a, b = p, q
    while not b.is_zero():
        _, r = a.divmod(b)
        a, b = b, r
    if a.is_zero():
        return a
    return a.monic()


# ---------------------------------------------------------------------------
# Newton identities
# ---------------------------------------------------------------------------


def power_sums(p: Polynomial, m: int) -> list:
    """s_1..s_m of the roots of monic p, via the Newton recurrence."""
    if not p.is_monic:
        raise InvalidInputError("power_sums requires a monic polynomial")
    if m < 1:
        raise InvalidInputError("m must be positive")
    n = p.degree
    a = p.coeffs
    s: list = []
    for k in range(1, m + 1):
        acc = k * a[k] if k <= n else _coerce(0, p.mode)
        for i in range(1, min(k - 1, n) + 1):
            acc += a[i] * s[k - i - 1]
        s.append(-acc)
    return s


def from_power_sums(s: Sequence, n: int) -> Polynomial:
    """Monic degree-n polynomial with power sums s_1..s_n."""
    if n < 0:
        raise InvalidInputError("degree must be nonnegative")
    if len(s) < n:
        raise InvalidInputError(f"need {n} power sums, got {len(s)}")
    mode = MODE_RATIONAL if all(_is_exact(x) for x in s[:n]) else MODE_COMPLEX
    sums = [_coerce(x, mode) for x in s[:n]]
    a = [_coerce(1, mode)]
    for k in range(1, n + 1):
        acc = sums[k - 1]
        for i in range(1, k):
            acc += a[i] * sums[k - i - 1]
        a.append(-acc / k)
    return Polynomial(tuple(a), mode)


def random_rational_poly(n: int, rng: np.random.Generator, bound: int = 10) -> Polynomial:
    """Monic degree-n polynomial with random rational coefficients of modulus <= bound."""
    coeffs: list = [Fraction(1)]
    for _ in range(n):
        den = int(rng.integers(1, 4))
        num = int(rng.integers(-bound * den, bound * den + 1))
        coeffs.append(Fraction(num, den))
    if coeffs[-1] == 0:
        coeffs[-1] = Fraction(1)
    return Polynomial(tuple(coeffs), MODE_RATIONAL)


def multiset_distance(a: Sequence[complex], b: Sequence[complex]) -> float:
    """Greedy matching distance between two root multisets of equal size."""
    if len(a) != len(b):
        return float("inf")
    remaining = list(b)
    worst = 0.0
    for z in a:
        j = int(np.argmin([abs(z - w) for w in remaining]))
        worst = max(worst, abs(z - remaining[j]))
        remaining.pop(j)
    return worst
