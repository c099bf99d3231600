# -*- coding: utf-8 -*-
"""
Tschirnhaus transformations and reduction towers.

A TschirnhausMap sends each root x_i of a degree-n polynomial p to
T(x_i) = b_0 x_i^{n-1} + ... + b_{n-1}. The transformed polynomial is
computed root-free from power sums of T(companion(p)), so it is exact when
p and T are rational.

Reductions return a SolutionTower: the source, the ordered TowerSteps and
the target. Each step carries its forward data and an inverse recipe (an
expression tree in the variable "y") that maps a root of the next stage
back to a root of the previous one. Radical adjunctions and the quadric /
line / cubic steps only adjoin scalars, so their recipes are the identity.
"""
from __future__ import annotations

import cmath
import logging
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional, Sequence

import numpy as np

from rdlab.constants import (
    NORMALIZE_EQUAL_TAIL,
    NORMALIZE_UNIT_CONSTANT,
    STEP_AUXILIARY_CUBIC,
    STEP_LINE_ON_QUADRIC,
    STEP_LINEAR_SECTION,
    STEP_LINEAR_SHIFT,
    STEP_QUADRIC_DIAGONALIZATION,
    STEP_RADICAL,
    STEP_SCALING,
    STEP_TSCHIRNHAUS,
)
from rdlab.errors import DegenerateInputError, InvalidInputError, NumericalFailureError
from rdlab.linalg import nullspace
from rdlab.poly import (
    MODE_COMPLEX,
    MODE_RATIONAL,
    Polynomial,
    RootSet,
    backward_error,
    from_power_sums,
    gcd,
    newton_polish,
    power_sums,
    root_residual,
    roots,
    sylvester_matrix,
)

logger = logging.getLogger(__name__)

# Relative size below which a numerically computed coefficient is snapped to 0.
SNAP_TOL = 1e-7
# Relative singular value below which a Sylvester kernel direction counts.
KERNEL_TOL = 1e-8


# ---------------------------------------------------------------------------
# Types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TschirnhausMap:
    """T(x) = b[0] x^{n-1} + b[1] x^{n-2} + ... + b[n-1]."""

    n: int
    b: tuple

    def __post_init__(self) -> None:
        if len(self.b) != self.n:
            raise InvalidInputError(f"Tschirnhaus map for degree {self.n} needs {self.n} coefficients, got {len(self.b)}")
        object.__setattr__(self, "b", tuple(self.b))

    @classmethod
    def identity(cls, n: int) -> "TschirnhausMap":
        if n < 2:
            raise InvalidInputError("identity map needs n >= 2")
        return cls(n, (0,) * (n - 2) + (1, 0))

    @classmethod
    def from_polynomial(cls, t: Polynomial, p: Polynomial) -> "TschirnhausMap":
        """Any substitution polynomial, reduced modulo p to degree < deg p."""
        n = p.degree
        _, r = t.divmod(p)
        cs = list(r.coeffs)
        if r.is_zero():
            cs = []
        cs = [0] * (n - len(cs)) + cs
        return cls(n, tuple(cs))

    @property
    def polynomial(self) -> Polynomial:
        return Polynomial.from_coeffs(self.b)

    def __call__(self, x):
        return self.polynomial(x)


@dataclass(frozen=True)
class TowerStep:
    kind: str
    forward: dict
    inverse: dict
    degree: Optional[int] = None
    branch: Optional[int] = None

    def pull(self, y):
        """Evaluate the inverse recipe at a root of the next stage."""
        return evaluate_recipe(self.inverse, y)

    def push(self, x):
        """Map a root of the previous stage forward through this step."""
        if self.kind == STEP_LINEAR_SHIFT:
            return x - self.forward["shift"]
        if self.kind == STEP_SCALING:
            return x * self.forward["factor"]
        if self.kind == STEP_TSCHIRNHAUS:
            tmap = TschirnhausMap(len(self.forward["map"]), tuple(self.forward["map"]))
            return tmap(x)
        return x


@dataclass(frozen=True)
class NormalFormTarget:
    """
    Coefficient patterns of a normal form; index k refers to a_k in
    x^n + a_1 x^{n-1} + ... + a_n.
    """

    zero: frozenset = frozenset()
    equal: frozenset = frozenset()
    unit: frozenset = frozenset()

    def __post_init__(self) -> None:
        if self.zero & self.unit:
            raise InvalidInputError(f"indices {sorted(self.zero & self.unit)} cannot be both zero and one")
        parent: dict[int, int] = {}

        def find(i: int) -> int:
            parent.setdefault(i, i)
            while parent[i] != i:
                i = parent[i]
            return i

        for a, b in self.equal:
            parent[find(a)] = find(b)
        classes: dict[int, set] = {}
        for i in list(parent):
            classes.setdefault(find(i), set()).add(i)
        for members in classes.values():
            if members & self.zero and members & self.unit:
                raise InvalidInputError(f"equal-pattern class {sorted(members)} mixes zero and unit indices")

    def matches(self, p: Polynomial, tol: float = 0.0) -> bool:
        a = p.coeffs
        if not all(abs(complex(a[k])) <= tol for k in self.zero):
            return False
        if not all(abs(complex(a[k]) - 1) <= tol for k in self.unit):
            return False
        return all(abs(complex(a[i]) - complex(a[j])) <= tol * (1 + abs(complex(a[i]))) for i, j in self.equal)

    @classmethod
    def depressed(cls) -> "NormalFormTarget":
        return cls(zero=frozenset({1}))

    @classmethod
    def two_killed(cls) -> "NormalFormTarget":
        return cls(zero=frozenset({1, 2}))

    @classmethod
    def bring_hamilton(cls, n: int, normalize: str = NORMALIZE_EQUAL_TAIL) -> "NormalFormTarget":
        if normalize == NORMALIZE_UNIT_CONSTANT:
            return cls(zero=frozenset({1, 2, 3}), unit=frozenset({n}))
        return cls(zero=frozenset({1, 2, 3}), equal=frozenset({(n - 1, n)}))


@dataclass(frozen=True)
class SolutionTower:
    source: Polynomial
    steps: tuple
    target: Polynomial
    normal_form: NormalFormTarget = field(default_factory=NormalFormTarget)

    def census(self) -> Counter:
        """Counts of (kind, degree) over the steps."""
        return Counter((s.kind, s.degree) for s in self.steps)

    def radical_degrees(self) -> list[int]:
        return [s.degree for s in self.steps if s.kind == STEP_RADICAL]


@dataclass(frozen=True)
class Recovery:
    root: complex
    degenerate: bool
    fiber: tuple = ()


# ---------------------------------------------------------------------------
# Inverse recipes
# ---------------------------------------------------------------------------


def _var() -> dict:
    return {"var": "y"}


def _const(value) -> dict:
    return {"const": value}


def _op(name: str, *args: dict) -> dict:
    return {"op": name, "args": list(args)}


def evaluate_recipe(node: dict, y):
    if "var" in node:
        return y
    if "const" in node:
        return node["const"]
    op = node["op"]
    if op == "subresultant-root":
        source = Polynomial.from_coeffs(node["source"])
        tmap = TschirnhausMap(source.degree, tuple(node["map"]))
        return recover_root(source, tmap, y, validate=False).root
    args = [evaluate_recipe(a, y) for a in node["args"]]
    if op == "add":
        return args[0] + args[1]
    if op == "mul":
        return args[0] * args[1]
    if op == "div":
        return args[0] / args[1]
    if op == "neg":
        return -args[0]
    raise InvalidInputError(f"unknown recipe operation {op!r}")


def _fiber_recipe(source: Polynomial, tmap: TschirnhausMap) -> dict:
    return {"op": "subresultant-root", "source": list(source.coeffs), "map": list(tmap.b), "args": [_var()]}


# ---------------------------------------------------------------------------
# apply / recover_root
# ---------------------------------------------------------------------------


def _basis_power_sums(p: Polynomial) -> list:
    """s_0..s_{n-1} of the roots of monic p."""
    n = p.degree
    zero_mode = MODE_RATIONAL if p.is_exact else MODE_COMPLEX
    s0 = Fraction(n) if zero_mode == MODE_RATIONAL else complex(n)
    return [s0] + (power_sums(p, n - 1) if n >= 2 else [])


def image_power_sums(p: Polynomial, tmap: TschirnhausMap, m: int) -> list:
    """S_k = sum_i T(x_i)^k for k = 1..m, via T^k mod p against s_0..s_{n-1}."""
    n = p.degree
    s = _basis_power_sums(p)
    t = tmap.polynomial
    acc = Polynomial((1,), MODE_RATIONAL)
    out = []
    for _ in range(m):
        _, acc = (acc * t).divmod(p)
        cs = list(acc.coeffs)
        cs = [0] * (n - len(cs)) + cs
        total = 0
        for j, c in enumerate(cs):
            if c != 0:
                total += c * s[n - 1 - j]
        out.append(total)
    return out


def apply(p: Polynomial, tmap: TschirnhausMap) -> Polynomial:
    """The monic polynomial whose roots are T(x_i), computed without rooting p."""
    if not p.is_monic:
        raise InvalidInputError("apply requires a monic polynomial")
    if tmap.n != p.degree:
        raise InvalidInputError(f"map is for degree {tmap.n}, polynomial has degree {p.degree}")
    n = p.degree
    if n == 1:
        return Polynomial.from_roots([tmap(-p.coeffs[1])])
    return from_power_sums(image_power_sums(p, tmap, n), n)


def _exact_value(y) -> Optional[Fraction]:
    if isinstance(y, (Fraction, int)) and not isinstance(y, bool):
        return Fraction(y)
    return None


def _rationalize_root(poly: Polynomial, y) -> Optional[Fraction]:
    """An exact rational root of poly near y, if poly is exact and one exists."""
    exact = _exact_value(y)
    if exact is not None:
        return exact
    if not poly.is_exact:
        return None
    z = complex(y)
    if abs(z.imag) > 1e-9 * (1 + abs(z)):
        return None
    r = Fraction(z.real).limit_denominator(10**6)
    return r if poly(r) == 0 else None


def _deflated_fiber(p: Polynomial, h: Polynomial) -> Polynomial:
    """Largest factor of p whose roots all lie in the zero set of h."""
    part = Polynomial((1,), MODE_RATIONAL)
    rest = p
    while True:
        g = gcd(rest, h)
        if g.degree < 1:
            return part
        part = part * g
        rest, _ = rest.divmod(g)


def _sylvester_root(p: Polynomial, h: Polynomial) -> tuple[Optional[complex], int]:
    """Common root of p and h from the Sylvester kernel, plus the kernel dimension."""
    mat = np.array(sylvester_matrix(p.to_complex(), h.to_complex()), dtype=complex)
    _, sv, vh = np.linalg.svd(mat)
    if sv[0] == 0:
        return None, mat.shape[0]
    dim = int(np.sum(sv <= KERNEL_TOL * sv[0]))
    v = vh[-1].conj()
    tail = v[1:]
    denom = np.vdot(tail, tail)
    if denom == 0:
        return None, dim
    return complex(np.vdot(tail, v[:-1]) / denom), max(dim, 1)


def _matched_fiber(p: Polynomial, tmap: TschirnhausMap, y: complex, count: int) -> list[complex]:
    """The `count` roots of p whose T-values are closest to y."""
    rs = roots(p.to_complex(), tol=1e-6).roots
    t = tmap.polynomial.to_complex()
    return sorted(rs, key=lambda x: abs(t(x) - y))[:count]


def recover_root(
    p: Polynomial,
    tmap: TschirnhausMap,
    y,
    tol: float = 1e-8,
    validate: bool = True,
) -> Recovery:
    """
    A root x of p with T(x) = y: the root of gcd(p(x), y - T(x)).

    Exact inputs use the Euclidean gcd; floating inputs read the common root
    off the Sylvester kernel of (p, T - y). A fiber with more than one point
    returns one of them with `degenerate` set.
    """
    if tmap.n != p.degree:
        raise InvalidInputError(f"map is for degree {tmap.n}, polynomial has degree {p.degree}")
    if validate:
        image = apply(p, tmap)
        if backward_error(image, complex(y) if not isinstance(y, Fraction) else complex(float(y))) > tol:
            raise InvalidInputError(f"{y!r} is not a root of the transformed polynomial")
    t = tmap.polynomial
    exact_y = _rationalize_root(apply(p, tmap), y) if (p.is_exact and t.is_exact) else None
    if exact_y is not None:
        h = Polynomial((exact_y,), MODE_RATIONAL) - t
        fiber = _deflated_fiber(p, h) if not h.is_zero() else p
        if fiber.degree == 0:
            raise InvalidInputError(f"{y!r} has an empty fiber")
        if fiber.degree == 1:
            x = -fiber.coeffs[1] / fiber.coeffs[0]
            return Recovery(complex(float(x)), False, (complex(float(x)),))
        fs = tuple(roots(fiber, tol=1e-6).roots)
        return Recovery(fs[0], True, fs)
    yc = complex(y)
    h = Polynomial((yc,), MODE_COMPLEX) - t.to_complex()
    if h.degree == 0:
        if abs(h.coeffs[0]) <= tol * (1 + abs(yc)):
            fs = tuple(roots(p.to_complex(), tol=1e-6).roots)
            return Recovery(fs[0], True, fs)
        raise InvalidInputError(f"{y!r} is not in the image of a constant map")
    x, dim = _sylvester_root(p, h)
    if x is None or dim > 1:
        fs = tuple(_matched_fiber(p, tmap, yc, max(dim, 2)))
        return Recovery(fs[0], True, fs)
    x = newton_polish(p.to_complex(), x, 3)
    return Recovery(x, False, (x,))


# ---------------------------------------------------------------------------
# Reductions
# ---------------------------------------------------------------------------


def _exact_sqrt(q) -> Optional[Fraction]:
    if not isinstance(q, Fraction) or q < 0:
        return None
    num, den = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if num * num == q.numerator and den * den == q.denominator:
        return Fraction(num, den)
    return None


def _sqrt(q) -> tuple[Any, bool]:
    """Principal square root; exact when q is a rational square."""
    exact = _exact_sqrt(q)
    if exact is not None:
        return exact, True
    return cmath.sqrt(complex(q)), False


def _root_scale(p: Polynomial) -> float:
    n = p.degree
    return max([abs(complex(p.coeffs[k])) ** (1.0 / k) for k in range(1, n + 1)] + [1e-300])


def _snap_zeros(p: Polynomial, indices: Sequence[int], stage: str) -> Polynomial:
    """Check numerically small coefficients and set them to exact zero."""
    if p.is_exact:
        bad = [k for k in indices if p.coeffs[k] != 0]
        if bad:
            raise NumericalFailureError(f"{stage}: coefficients {bad} did not vanish", {"stage": stage})
        return p
    rho = _root_scale(p)
    cs = list(p.coeffs)
    for k in indices:
        size = abs(cs[k])
        if size > SNAP_TOL * rho**k:
            raise NumericalFailureError(
                f"{stage}: coefficient a_{k} = {size:.3e} did not vanish",
                {"stage": stage, "index": k, "modulus": size, "root_scale": rho},
            )
        cs[k] = 0j
    return Polynomial(tuple(cs), MODE_COMPLEX)


def depress(p: Polynomial) -> tuple[Polynomial, TowerStep]:
    """Translate the roots so the x^{n-1} coefficient vanishes (x = y + shift)."""
    if p.degree < 2:
        raise InvalidInputError("depress requires degree >= 2")
    if not p.is_monic:
        raise InvalidInputError("depress requires a monic polynomial")
    n = p.degree
    a1 = p.coeffs[1]
    shift = -a1 / n
    target = p.shift(shift)
    if not target.is_exact:
        target = _snap_zeros(target, [1], "linear-shift")
    step = TowerStep(
        STEP_LINEAR_SHIFT,
        {"shift": shift},
        _op("add", _var(), _const(shift)),
    )
    return target, step


def kill_two(p: Polynomial) -> tuple[Polynomial, SolutionTower]:
    """
    Quadratic Tschirnhaus T = x^2 + u x + w with a_1 = a_2 = 0 in the target.

    S_1 = 0 fixes w linearly in u; S_2 = 0 is then a quadratic in u whose
    root costs one square root.
    """
    n = p.degree
    if n < 3:
        raise InvalidInputError("kill_two requires degree >= 3")
    if not p.is_monic:
        raise InvalidInputError("kill_two requires a monic polynomial")
    normal = NormalFormTarget.two_killed()
    if p.coeffs[1] == 0 and p.coeffs[2] == 0:
        return p, SolutionTower(p, (), p, normal)
    s1, s2, s3, s4 = power_sums(p, 4)
    w0, w1 = -s2 / n, -s1 / n
    qa = s2 + 2 * w1 * s1 + n * w1 * w1
    qb = 2 * s3 + 2 * w1 * s2 + 2 * w0 * s1 + 2 * n * w0 * w1
    qc = s4 + 2 * w0 * s2 + n * w0 * w0
    steps = []
    if qa == 0 or (not p.is_exact and abs(qa) <= 1e-14 * (abs(qb) + abs(qc))):
        if qb == 0:
            if qc != 0:
                raise DegenerateInputError("kill_two", "S_2 is a nonzero constant in the Tschirnhaus parameter")
            # S_2 vanishes for every u
            u = 0
        else:
            u = -qc / qb
    else:
        disc = qb * qb - 4 * qa * qc
        root, exact = _sqrt(disc)
        steps.append(TowerStep(STEP_RADICAL, {"radicand": disc, "value": root, "exact": exact}, _var(), degree=2, branch=0))
        u = (-qb + root) / (2 * qa)
    w = w0 + w1 * u
    tmap = TschirnhausMap(n, (0,) * (n - 3) + (1, u, w))
    target = apply(p, tmap)
    target = _snap_zeros(target, [1, 2], "tschirnhaus-substitution")
    steps.append(TowerStep(STEP_TSCHIRNHAUS, {"map": list(tmap.b)}, _fiber_recipe(p, tmap)))
    logger.debug("kill_two degree %d: u=%s exact=%s", n, u, target.is_exact)
    return target, SolutionTower(p, tuple(steps), target, normal)


def _diagonalize(q: list[list], exact: bool) -> tuple[list, list[list], list[int]]:
    """
    Symmetric Gaussian elimination: q = sum_i d_i l_i l_i^T.

    Pivots are the first nonzero diagonal entry (exact) or the largest in
    modulus (floating).
    """
    size = len(q)
    m = [list(row) for row in q]
    used: list[int] = []
    ds, forms = [], []
    for _ in range(size):
        free = [k for k in range(size) if k not in used]
        if exact:
            k = next((k for k in free if m[k][k] != 0), None)
        else:
            k = max(free, key=lambda k: abs(m[k][k]))
            scale = max(abs(m[i][j]) for i in range(size) for j in range(size)) or 1.0
            if abs(m[k][k]) <= 1e-13 * scale:
                k = None
        if k is None:
            raise DegenerateInputError("quadric-diagonalization", "the quadric S_2 restricted to the linear section is singular")
        d = m[k][k]
        form = [m[k][j] / d for j in range(size)]
        for i in range(size):
            for j in range(size):
                m[i][j] = m[i][j] - d * form[i] * form[j]
        used.append(k)
        ds.append(d)
        forms.append(form)
    return ds, forms, used


def _quartic_power_sum(b: Sequence[complex], s: Sequence, k: int) -> complex:
    """sum_i T(x_i)^k for T = b0 x^4 + ... + b4, from power sums s_0..s_{4k}."""
    t = Polynomial(tuple(complex(v) for v in b), MODE_COMPLEX)
    tk = t ** k
    cs = tk.coeffs
    deg = len(cs) - 1
    return complex(sum(complex(c) * complex(s[deg - j]) for j, c in enumerate(cs)))


def bring_hamilton_reduce(p: Polynomial, normalize: str = NORMALIZE_EQUAL_TAIL) -> tuple[Polynomial, SolutionTower]:
    """
    Reduce a degree n >= 5 polynomial to x^n + c_4 x^{n-4} + ... + c x + c.

    A quartic Tschirnhaus T(x) = b_0 x^4 + ... + b_4 kills S_1 on a
    hyperplane, S_2 on a line of the quadric (found after diagonalizing the
    quadric and adjoining four square roots) and S_3 at a root of the cubic
    restricted to that line. A final scaling makes the last two coefficients
    equal; with normalize="unit-constant" an n-th root makes the constant 1.
    """
    n = p.degree
    if n < 5:
        raise InvalidInputError("bring_hamilton_reduce requires degree >= 5")
    if not p.is_monic:
        raise InvalidInputError("bring_hamilton_reduce requires a monic polynomial")
    if normalize not in (NORMALIZE_EQUAL_TAIL, NORMALIZE_UNIT_CONSTANT):
        raise InvalidInputError(f"unknown normalization {normalize!r}")
    exact = p.is_exact
    s = _basis_power_sums(p)[:1] + power_sums(p, 12)
    steps: list[TowerStep] = []

    # b_4 = -(b_0 s_4 + b_1 s_3 + b_2 s_2 + b_3 s_1) / n
    section = [-s[4 - j] / n for j in range(4)]
    steps.append(TowerStep(STEP_LINEAR_SECTION, {"b4": section}, _var()))

    q = [[s[8 - j - k] - s[4 - j] * s[4 - k] / n for k in range(4)] for j in range(4)]
    ds, forms, pivots = _diagonalize(q, exact)
    steps.append(TowerStep(STEP_QUADRIC_DIAGONALIZATION, {"d": ds, "forms": forms, "pivots": pivots}, _var()))

    rows = []
    for d, form in zip(ds, forms):
        r, is_exact = _sqrt(d)
        steps.append(TowerStep(STEP_RADICAL, {"radicand": d, "value": r, "exact": is_exact}, _var(), degree=2, branch=0))
        rows.append([complex(r) * complex(f) for f in form])
    lines = np.array([
        [rows[0][j] + 1j * rows[1][j] for j in range(4)],
        [rows[2][j] + 1j * rows[3][j] for j in range(4)],
    ])
    if np.linalg.matrix_rank(lines, tol=1e-12 * np.abs(lines).max()) < 2:
        raise DegenerateInputError("line-on-quadric", "L0 + i L1 and L2 + i L3 are dependent")
    v, w = nullspace(lines, 2)
    steps.append(TowerStep(STEP_LINE_ON_QUADRIC, {"v": [complex(c) for c in v], "w": [complex(c) for c in w]}, _var()))

    def full(b4: np.ndarray) -> list[complex]:
        b4 = list(b4)
        return b4 + [sum(complex(c) * x for c, x in zip(section, b4))]

    omega = np.exp(2j * np.pi * np.arange(4) / 4)
    values = np.array([_quartic_power_sum(full(v + om * w), s, 3) for om in omega])
    cubic = np.fft.fft(values) / 4
    scale = np.abs(cubic).max()
    if scale == 0:
        raise DegenerateInputError("auxiliary-cubic", "S_3 vanishes on the whole line")
    if abs(cubic[0]) <= 1e-12 * scale:
        lam = None
        b = v
    else:
        poly = Polynomial(tuple(complex(c) for c in cubic), MODE_COMPLEX)
        lam = roots(poly, tol=1e-8).roots[0]
        b = lam * v + w
    steps.append(TowerStep(
        STEP_AUXILIARY_CUBIC,
        {"cubic": [complex(c) for c in cubic], "root": lam},
        _var(),
        degree=3,
        branch=0,
    ))
    bfull = np.array(full(b), dtype=complex)
    if np.abs(bfull[:4]).max() <= 1e-12 * max(1.0, np.abs(bfull).max()):
        raise DegenerateInputError("tschirnhaus-substitution", "the quartic substitution is constant")
    bfull = bfull / bfull[np.argmax(np.abs(bfull))]
    tmap = TschirnhausMap(n, (0,) * (n - 5) + tuple(complex(c) for c in bfull))
    reduced = _snap_zeros(apply(p, tmap), [1, 2, 3], "tschirnhaus-substitution")
    steps.append(TowerStep(STEP_TSCHIRNHAUS, {"map": list(tmap.b)}, _fiber_recipe(p, tmap)))

    target, scaling = _equal_tail_scaling(reduced)
    steps.append(scaling)
    if normalize == NORMALIZE_UNIT_CONSTANT:
        target, extra = _unit_constant_scaling(target)
        steps.extend(extra)
    logger.info("bring-hamilton: degree %d reduced in %d steps (%s)", n, len(steps), normalize)
    return target, SolutionTower(p, tuple(steps), target, NormalFormTarget.bring_hamilton(n, normalize))


def _equal_tail_scaling(q: Polynomial) -> tuple[Polynomial, TowerStep]:
    """x -> (a_{n-1}/a_n) x, making the last two coefficients equal."""
    n = q.degree
    c1, c0 = complex(q.coeffs[n - 1]), complex(q.coeffs[n])
    rho = _root_scale(q)
    if abs(c1) <= 1e-12 * rho ** (n - 1):
        raise DegenerateInputError("coefficient-scaling", "a_{n-1} = 0")
    if abs(c0) <= 1e-12 * rho**n:
        raise DegenerateInputError("coefficient-scaling", "a_n = 0")
    lam = c1 / c0
    scaled = list(q.scale_roots(lam).coeffs)
    tail = c1**n / c0 ** (n - 1)
    scaled[n - 1] = tail
    scaled[n] = tail
    target = Polynomial(tuple(scaled), MODE_COMPLEX)
    step = TowerStep(STEP_SCALING, {"factor": lam}, _op("mul", _var(), _const(1 / lam)))
    return target, step


def _unit_constant_scaling(q: Polynomial) -> tuple[Polynomial, list[TowerStep]]:
    """Adjoin nu = c^{1/n} and scale x -> x / nu so the constant term is 1."""
    n = q.degree
    c = complex(q.coeffs[n])
    nu = c ** (1.0 / n)
    radical = TowerStep(STEP_RADICAL, {"radicand": c, "value": nu, "exact": False}, _var(), degree=n, branch=0)
    lam = 1 / nu
    scaled = list(q.scale_roots(lam).coeffs)
    scaled[n] = 1 + 0j
    target = Polynomial(tuple(scaled), MODE_COMPLEX)
    step = TowerStep(STEP_SCALING, {"factor": lam}, _op("mul", _var(), _const(nu)))
    return target, [radical, step]


# ---------------------------------------------------------------------------
# Solving through a tower
# ---------------------------------------------------------------------------


def _clusters(values: Sequence, tol: float) -> list[list[int]]:
    groups: list[list[int]] = []
    for i, v in enumerate(values):
        for g in groups:
            if abs(complex(values[g[0]]) - complex(v)) <= tol:
                g.append(i)
                break
        else:
            groups.append([i])
    return groups


def _recover_stage(source: Polynomial, tmap: TschirnhausMap, ys: list) -> tuple[list, list[bool]]:
    """Pull every root of the next stage back, handling repeated roots as one fiber."""
    scale = 1.0 + max(abs(complex(y)) for y in ys)
    xs, flags = [], []
    for group in _clusters(ys, 1e-6 * scale):
        y = ys[group[0]]
        k = len(group)
        if k == 1:
            rec = recover_root(source, tmap, y, validate=False)
            if not rec.degenerate:
                xs.append(rec.root)
                flags.append(False)
                continue
        fiber = None
        if source.is_exact and tmap.polynomial.is_exact:
            exact_y = _rationalize_root(apply(source, tmap), y)
            if exact_y is not None:
                h = Polynomial((exact_y,), MODE_RATIONAL) - tmap.polynomial
                part = _deflated_fiber(source, h) if not h.is_zero() else source
                if part.degree == k:
                    fiber = list(roots(part, tol=1e-6).roots)
        if fiber is None:
            fiber = _matched_fiber(source, tmap, complex(y), k)
        xs.extend(fiber)
        flags.extend([True] * len(fiber))
    return xs, flags


def solve_via_tower(tower: SolutionTower, tol: float = 1e-8) -> RootSet:
    """Roots of tower.source from the roots of tower.target through the inverse recipes."""
    ys = list(roots(tower.target, tol=max(tol, 1e-10)).roots)
    flags = [False] * len(ys)
    stage_sources = _stage_sources(tower)
    for step, source in zip(reversed(tower.steps), reversed(stage_sources)):
        if step.kind == STEP_TSCHIRNHAUS:
            tmap = TschirnhausMap(source.degree, tuple(step.forward["map"]))
            ys, new_flags = _recover_stage(source, tmap, ys)
            flags = new_flags if not any(flags) else [True] * len(ys)
        else:
            ys = [step.pull(y) for y in ys]
    src = tower.source.to_complex()
    polished = [newton_polish(src, complex(y), 3) for y in ys]
    errors = tuple(backward_error(tower.source, z) for z in polished)
    worst = max(errors) if errors else 0.0
    if worst > tol:
        raise NumericalFailureError(
            "tower root recovery above tolerance",
            {"worst_backward_error": worst, "tolerance": tol, "degree": tower.source.degree},
        )
    residuals = tuple(root_residual(tower.source, z) for z in polished)
    return RootSet(tuple(polished), residuals, tol, tuple(flags), errors)


def _stage_sources(tower: SolutionTower) -> list[Polynomial]:
    """The polynomial each step starts from (only root-moving steps change it)."""
    out = []
    current = tower.source
    for step in tower.steps:
        out.append(current)
        if step.kind == STEP_LINEAR_SHIFT:
            current = current.shift(step.forward["shift"])
        elif step.kind == STEP_SCALING:
            current = current.scale_roots(step.forward["factor"])
        elif step.kind == STEP_TSCHIRNHAUS:
            current = apply(current, TschirnhausMap(current.degree, tuple(step.forward["map"])))
    return out


def depress_tower(p: Polynomial) -> SolutionTower:
    target, step = depress(p)
    return SolutionTower(p, (step,), target, NormalFormTarget.depressed())


def identity_tower(p: Polynomial) -> SolutionTower:
    return SolutionTower(p, (), p)
