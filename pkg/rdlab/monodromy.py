# -*- coding: utf-8 -*-
"""
Numerical monodromy of enumerative covers, plus the count formulas.

A family is a ParametricSystem whose solutions over a parameter point form a
fiber of known degree. Loops leave the basepoint through 4 seeded random
waypoints and come back; tracking the fiber around a loop and matching the
endpoints against the fiber gives one permutation. The permutations
generate the monodromy group, which is handed to `rdlab.groups`.

Families:
- lines27: lines on cubic surfaces, (α, β, γ, δ) over the 20 cubic coefficients
- bezout:R,S: intersections of two affine plane curves of degrees R and S
- flex:D: flexes of plane curves of degree D (curve and Hessian)
- bitangents28: bitangents y = mx + c of plane quartics with the square
  witness x^2 + ux + v, over the 15 quartic coefficients
"""
from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence, Union

import numpy as np

from rdlab.constants import (
    DEFAULT_LOOP_RADIUS,
    FIBER_MATCH_RATIO,
    ORDER_WE6,
    ORDER_WE7_PLUS,
    STABILIZATION_LOOPS,
)
from rdlab.cubic_lines import ProjLine, line_adjacency, validate_configuration
from rdlab.errors import InvalidInputError, NumericalFailureError
from rdlab.groups import Perm, PermGroup, derived_series
from rdlab.homotopy import ParametricSystem, TrackerConfig, Tracker, dedupe_points, solve_total_degree, track
from rdlab.multipoly import CompiledForm, MultiPoly, form_from_coeffs, monomials
from rdlab.quartic_bitangents import chart_equations as bitangent_chart_equations
from rdlab.rng import SeedTree, complex_normal

logger = logging.getLogger(__name__)

LOOP_ACCEPTED = "accepted"
LOOP_PATH_FAILURE = "path-failure"
LOOP_AMBIGUOUS = "ambiguous-match"
LOOP_NOT_BIJECTIVE = "not-bijective"
LOOP_ADJACENCY = "adjacency-violation"

# Cover degrees of the hexahedral-form tower for cubic surfaces:
# ordered forms -> hyperplane (2), hyperplane -> its S6 quotient (720),
# quotient -> cubic surfaces (36). Their product is |W(E6)|.
HEXAHEDRAL_COVER_DEGREES = (("t1", 2), ("t2", 720), ("t3", 36))


# ---------------------------------------------------------------------------
# Counts
# ---------------------------------------------------------------------------


def kontsevich_nd(d: int) -> int:
    """Number of rational plane curves of degree d through 3d - 1 general points."""
    if d < 1:
        raise InvalidInputError(f"kontsevich_nd needs d >= 1, got {d}")
    n = [0, 1]
    for e in range(2, d + 1):
        total = 0
        for d1 in range(1, e):
            d2 = e - d1
            total += n[d1] * n[d2] * (
                d1 * d1 * d2 * d2 * math.comb(3 * e - 4, 3 * d1 - 2)
                - d1**3 * d2 * math.comb(3 * e - 4, 3 * d1 - 1)
            )
        n.append(total)
    return n[d]


def flex_count(d: int) -> int:
    if d < 3:
        raise InvalidInputError(f"flexes need degree >= 3, got {d}")
    return 3 * d * (d - 2)


def bezout_count(r: int, s: int) -> int:
    if r < 1 or s < 1:
        raise InvalidInputError(f"Bezout degrees must be >= 1, got ({r}, {s})")
    return r * s


def hexahedral_degrees() -> dict[str, int]:
    return dict(HEXAHEDRAL_COVER_DEGREES)


# ---------------------------------------------------------------------------
# Families
# ---------------------------------------------------------------------------


@dataclass
class Family:
    name: str
    system: ParametricSystem
    target_order: Optional[int] = None
    fiber_solver: Optional[Callable[[ParametricSystem, np.ndarray, np.random.Generator], np.ndarray]] = None
    loop_check: Optional[Callable[[np.ndarray, Perm], bool]] = None
    basepoint_check: Optional[Callable[[np.ndarray], bool]] = None


def _affine_monomials(degree: int) -> list[tuple[int, int]]:
    return [(i, total - i) for total in range(degree, -1, -1) for i in range(total, -1, -1)]


def bezout_system(r: int, s: int) -> ParametricSystem:
    """f(x, y) = g(x, y) = 0 for affine curves of degrees r and s, every coefficient a parameter."""
    bezout_count(r, s)
    mf, mg = _affine_monomials(r), _affine_monomials(s)
    nv = 2 + len(mf) + len(mg)
    eqs = []
    offset = 2
    for mons in (mf, mg):
        terms = {}
        for k, (i, j) in enumerate(mons):
            exp = [0] * nv
            exp[0], exp[1] = i, j
            exp[offset + k] = 1
            terms[tuple(exp)] = 1
        eqs.append(MultiPoly(nv, terms))
        offset += len(mons)
    return ParametricSystem(eqs, 2, nv - 2, fiber_degree=r * s, name=f"bezout:{r},{s}")


def _det3(m: list[list[MultiPoly]]) -> MultiPoly:
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def flex_system(d: int) -> ParametricSystem:
    """C(x, y, 1) = 0 and Hess(C)(x, y, 1) = 0 with the curve coefficients as parameters."""
    count = flex_count(d)
    mons = monomials(3, d)
    nv = 3 + len(mons)
    terms = {}
    for k, exp in enumerate(mons):
        full = [0] * nv
        full[:3] = exp
        full[3 + k] = 1
        terms[tuple(full)] = 1
    curve = MultiPoly(nv, terms)
    grads = [curve.diff(i) for i in range(3)]
    hess = [[grads[i].diff(j) for j in range(3)] for i in range(3)]
    keep = [0, 1] + list(range(3, nv))
    eqs = [poly.substitute({2: 1}, keep) for poly in (curve, _det3(hess))]
    return ParametricSystem(eqs, 2, len(mons), fiber_degree=count, name=f"flex:{d}")


def lines27_system() -> ParametricSystem:
    """Coefficients of f(s, t, αs + βt, γs + δt) for a cubic with all 20 coefficients as parameters."""
    nv = 4 + 20 + 2
    a, b, c, d = (MultiPoly.variable(i, nv) for i in range(4))
    s, t = MultiPoly.variable(24, nv), MultiPoly.variable(25, nv)
    point = [s, t, a * s + b * t, c * s + d * t]
    powers = [[MultiPoly.constant(1, nv)] for _ in point]
    for k, x in enumerate(point):
        for _ in range(3):
            powers[k].append(powers[k][-1] * x)
    total = MultiPoly(nv)
    for m, exp in enumerate(monomials(4, 3)):
        term = MultiPoly.variable(4 + m, nv)
        for k, e in enumerate(exp):
            if e:
                term = term * powers[k][e]
        total = total + term
    buckets: dict[tuple, dict] = {}
    for exp, coeff in total.terms.items():
        buckets.setdefault((exp[24], exp[25]), {})[exp[:24]] = coeff
    eqs = [MultiPoly(24, buckets.get((3 - k, k), {})) for k in range(4)]
    return ParametricSystem(eqs, 4, 20, fiber_degree=27, name="lines27")


def bitangents28_system() -> ParametricSystem:
    """C(x, mx + c, 1) = a4 (x^2 + ux + v)^2 coefficientwise, in (m, c, u, v)."""
    nv = 4 + 15 + 1
    m, c = MultiPoly.variable(0, nv), MultiPoly.variable(1, nv)
    x = MultiPoly.variable(19, nv)
    point = [x, m * x + c, MultiPoly.constant(1, nv)]
    total = MultiPoly(nv)
    for k, exp in enumerate(monomials(3, 4)):
        term = MultiPoly.variable(4 + k, nv)
        for i, e in enumerate(exp):
            if e:
                term = term * point[i] ** e
        total = total + term
    a = [dict() for _ in range(5)]
    for exp, coeff in total.terms.items():
        a[exp[19]][exp[:19]] = coeff
    a0, a1, a2, a3, a4 = (MultiPoly(19, terms) for terms in a)
    uu, vv = MultiPoly.variable(2, 19), MultiPoly.variable(3, 19)
    eqs = [
        a3 - a4 * uu * 2,
        a2 - a4 * (uu * uu + vv * 2),
        a1 - a4 * uu * vv * 2,
        a0 - a4 * vv * vv,
    ]
    return ParametricSystem(eqs, 4, 15, fiber_degree=28, name="bitangents28")


def fiber_total_degree(system: ParametricSystem, params: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Regular solutions at `params` from a total-degree solve of the specialized system."""
    result = solve_total_degree(system.specialize(params), rng)
    return np.array(result.solutions, dtype=complex).reshape(-1, system.n_unknowns)


def _bitangent_fiber(system: ParametricSystem, params: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """(m, c) from the two-equation chart solve, completed with the witness (u, v)."""
    form = form_from_coeffs([complex(p) for p in params], 3, 4)
    result = solve_total_degree(bitangent_chart_equations(form), rng)
    w = np.exp(2j * np.pi * np.arange(5) / 5)
    compiled = CompiledForm(form)
    points = []
    for mm, cc in result.solutions:
        vals = compiled(np.stack([w, mm * w + cc, np.ones(5)], axis=1))
        a = np.fft.fft(vals) / 5
        if abs(a[4]) < 1e-10:
            continue
        u = a[3] / (2 * a[4])
        v = (a[2] / a[4] - u * u) / 2
        points.append(np.array([mm, cc, u, v]))
    if not points:
        return np.zeros((0, 4), dtype=complex)
    x = Tracker(system).endgame(np.array(points), np.asarray(params, dtype=complex)[None, :])
    good = system.residual(x, params) < 1e-9
    return np.array(dedupe_points(list(x[good])), dtype=complex).reshape(-1, 4)


def _line_adjacency_of(fiber: np.ndarray) -> np.ndarray:
    lines = [ProjLine.from_points([1, 0, a, c], [0, 1, b, d]) for a, b, c, d in fiber]
    return line_adjacency(lines)


def _lines27_family() -> Family:
    state: dict = {}

    def basepoint_check(fiber: np.ndarray) -> bool:
        adj = _line_adjacency_of(fiber)
        state["adj"] = adj
        problems = validate_configuration(adj)
        if problems:
            logger.warning("lines27 basepoint configuration invalid: %s", problems)
        return not problems

    def loop_check(fiber: np.ndarray, perm: Perm) -> bool:
        adj = state.get("adj")
        if adj is None:
            adj = state["adj"] = _line_adjacency_of(fiber)
        sigma = np.array(perm.images)
        return bool(np.array_equal(adj[np.ix_(sigma, sigma)], adj))

    return Family("lines27", lines27_system(), ORDER_WE6, fiber_total_degree, loop_check, basepoint_check)


def family_from_spec(spec: str) -> Family:
    """Parse lines27 | bezout:R,S | flex:D | bitangents28."""
    name, _, arg = spec.partition(":")
    try:
        if name == "lines27" and not arg:
            return _lines27_family()
        if name == "bitangents28" and not arg:
            return Family("bitangents28", bitangents28_system(), ORDER_WE7_PLUS, _bitangent_fiber)
        if name == "bezout":
            r, s = (int(v) for v in arg.split(","))
            return Family(spec, bezout_system(r, s), math.factorial(r * s), fiber_total_degree)
        if name == "flex":
            return Family(spec, flex_system(int(arg)), None, fiber_total_degree)
    except ValueError as exc:
        if isinstance(exc, InvalidInputError):
            raise
        raise InvalidInputError(f"malformed family {spec!r}")
    raise InvalidInputError(f"unknown family {spec!r}; expected lines27, bezout:R,S, flex:D or bitangents28")


# ---------------------------------------------------------------------------
# Loops
# ---------------------------------------------------------------------------


@dataclass
class LoopRecord:
    index: int
    waypoints: list
    status: str
    images: Optional[list] = None

    def to_dict(self) -> dict:
        out = {"index": self.index, "status": self.status, "waypoints": [_complex_list(w) for w in self.waypoints]}
        if self.images is not None:
            out["permutation"] = list(self.images)
        return out


@dataclass
class MonodromyCertificate:
    family: str
    seed: int
    radius: float
    basepoint: np.ndarray
    fiber: np.ndarray
    fiber_degree: Optional[int]
    loops: list = field(default_factory=list)
    permutations: list = field(default_factory=list)
    order: int = 1
    solvable: bool = True
    derived_orders: list = field(default_factory=list)
    target_order: Optional[int] = None
    complete: bool = True
    stop_reason: str = ""

    @property
    def group(self) -> PermGroup:
        return PermGroup(len(self.fiber), [Perm(p) for p in self.permutations])

    @property
    def reached_target(self) -> bool:
        return self.target_order is not None and self.order == self.target_order

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "seed": self.seed,
            "radius": self.radius,
            "basepoint": _complex_list(self.basepoint),
            "fiber": [_complex_list(x) for x in self.fiber],
            "fiber_degree": self.fiber_degree,
            "loops": [loop.to_dict() for loop in self.loops],
            "permutations": [list(p) for p in self.permutations],
            "group": {
                "order": self.order,
                "solvable": self.solvable,
                "derived_series": list(self.derived_orders),
                "target_order": self.target_order,
            },
            "complete": self.complete,
            "stop_reason": self.stop_reason,
        }


def _complex_list(values) -> list:
    return [[float(np.real(v)), float(np.imag(v))] for v in np.asarray(values, dtype=complex).ravel()]


def loop_waypoints(basepoint: np.ndarray, radius: float, rng: np.random.Generator, count: int = 4) -> list[np.ndarray]:
    """basepoint, `count` random waypoints at the given radius, basepoint."""
    p0 = np.asarray(basepoint, dtype=complex)
    scale = radius * max(1.0, float(np.linalg.norm(p0)) / math.sqrt(p0.size))
    out = [p0]
    for _ in range(count):
        out.append(p0 + scale * complex_normal(rng, p0.size))
    out.append(p0)
    return out


def match_fiber(endpoints: np.ndarray, fiber: np.ndarray, ratio: float = FIBER_MATCH_RATIO) -> tuple[Optional[list], str]:
    """Nearest-neighbour images with a second-nearest ratio test; None unless bijective."""
    images = []
    for x in endpoints:
        dist = np.linalg.norm(fiber - x[None, :], axis=1)
        order = np.argsort(dist)
        nearest = dist[order[0]]
        second = dist[order[1]] if len(order) > 1 else np.inf
        if nearest > 1e-6 * (1.0 + np.linalg.norm(x)) or second < ratio * nearest:
            return None, LOOP_AMBIGUOUS
        images.append(int(order[0]))
    if sorted(images) != list(range(len(fiber))):
        return None, LOOP_NOT_BIJECTIVE
    return images, LOOP_ACCEPTED


def loop_permutation(
    system: ParametricSystem,
    fiber: np.ndarray,
    waypoints: Sequence[np.ndarray],
    config: Optional[TrackerConfig] = None,
) -> tuple[Optional[Perm], str]:
    """Track the fiber around a closed parameter path and match the endpoints."""
    results = track(system, waypoints, fiber, config)
    if not all(r.ok for r in results):
        return None, LOOP_PATH_FAILURE
    ends = np.array([r.end for r in results])
    images, status = match_fiber(ends, fiber)
    return (Perm(images) if images is not None else None), status


def monodromy_group(
    system: Union[Family, ParametricSystem],
    basepoint: Optional[Sequence[complex]] = None,
    loops: int = 50,
    seed: int = 0,
    *,
    fiber: Optional[np.ndarray] = None,
    target: Optional[int] = None,
    threads: int = 1,
    radius: float = DEFAULT_LOOP_RADIUS,
    config: Optional[TrackerConfig] = None,
    max_attempts: Optional[int] = None,
) -> MonodromyCertificate:
    """
    Certificate of the monodromy group generated by up to `loops` accepted loops.

    Stops early when the order reaches the target or has not grown for
    STABILIZATION_LOOPS accepted loops. Loops are computed in batches of
    `threads` and assembled in index order, so the certificate does not
    depend on the thread count.
    """
    family = system if isinstance(system, Family) else Family(system.name or "custom", system, None, fiber_total_degree)
    sys_ = family.system
    target = target if target is not None else family.target_order
    tree = SeedTree(seed).child("monodromy", family.name)
    if basepoint is None:
        p0 = complex_normal(tree.child("basepoint").generator(), sys_.n_params)
    else:
        p0 = np.asarray(basepoint, dtype=complex).reshape(sys_.n_params)
    if fiber is None:
        fiber = family.fiber_solver(sys_, p0, tree.child("fiber").generator())
    fiber = np.asarray(fiber, dtype=complex).reshape(-1, sys_.n_unknowns)
    cert = MonodromyCertificate(family.name, seed, radius, p0, fiber, sys_.fiber_degree, target_order=target)
    if sys_.fiber_degree is not None and len(fiber) != sys_.fiber_degree:
        logger.warning("fiber has %d points, expected %s; certificate incomplete", len(fiber), sys_.fiber_degree)
        cert.complete = False
    if len(fiber) == 0:
        raise NumericalFailureError("empty fiber at the basepoint", {"family": family.name})
    residual = float(np.max(sys_.residual(fiber, p0)))
    if residual > 1e-8:
        raise NumericalFailureError("fiber does not satisfy the system", {"residual": residual})
    if family.basepoint_check is not None and not family.basepoint_check(fiber):
        cert.complete = False

    sys_.compiled  # compile once before worker threads share the system
    group = PermGroup(len(fiber))
    chain = group.chain
    attempts = max_attempts if max_attempts is not None else 3 * loops
    accepted = 0
    stable = 0
    index = 0
    stop = ""

    def run(k: int) -> LoopRecord:
        waypoints = loop_waypoints(p0, radius, tree.child("loop", k).generator())
        perm, status = loop_permutation(sys_, fiber, waypoints, config)
        if perm is not None and family.loop_check is not None and not family.loop_check(fiber, perm):
            perm, status = None, LOOP_ADJACENCY
        return LoopRecord(k, waypoints, status, list(perm.images) if perm is not None else None)

    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        while not stop:
            if accepted >= loops:
                stop = "loop-count"
                break
            if index >= attempts:
                stop = "attempt-cap"
                break
            batch = list(range(index, min(index + max(1, threads), attempts)))
            index = batch[-1] + 1
            for record in pool.map(run, batch):
                cert.loops.append(record)
                if record.images is None:
                    logger.warning("loop %d discarded: %s", record.index, record.status)
                    continue
                accepted += 1
                cert.permutations.append(record.images)
                perm = Perm(record.images)
                if chain.insert(perm):
                    group.generators.append(perm)
                    stable = 0
                    logger.debug("loop %d grew the group to order %d", record.index, chain.order)
                else:
                    stable += 1
                if target is not None and chain.order == target:
                    stop = "target-reached"
                elif target is None and stable >= STABILIZATION_LOOPS:
                    stop = "stabilized"
                elif accepted >= loops:
                    stop = "loop-count"
                if stop:
                    break

    cert.stop_reason = stop
    cert.order = chain.order
    cert.derived_orders, cert.solvable = derived_series(group)
    if target is not None and cert.order != target:
        logger.warning("monodromy order %d below target %d after %d loops", cert.order, target, accepted)
    logger.info(
        "monodromy %s: order %d from %d accepted loops (%d attempted, stop: %s)",
        family.name, cert.order, accepted, len(cert.loops), stop,
    )
    return cert
