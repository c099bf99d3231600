# -*- coding: utf-8 -*-
"""
Parameter homotopies and the batched predictor-corrector tracker.

A ParametricSystem is a square polynomial system F(x; p) in unknowns x and
parameters p. Paths are piecewise-linear in parameter space; every path of a
batch carries its own position t and step h, so one numpy call advances all
live paths at once. Total-degree solving is the special case of a single
parameter t running from the start system (t = 0) to the target (t = 1).
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from rdlab.errors import InvalidInputError
from rdlab.linalg import safe_solve
from rdlab.multipoly import CompiledForm, MultiPoly
from rdlab.rng import random_gamma

logger = logging.getLogger(__name__)

PATH_SUCCESS = "success"
PATH_FAILED = "failed"
PATH_DIVERGED = "diverged"


@dataclass(frozen=True)
class TrackerConfig:
    initial_step: float = 0.02
    max_step: float = 0.05
    min_step: float = 1e-13
    max_iterations: int = 6000
    newton_iterations: int = 3
    corrector_tol: float = 1e-9
    first_update_tol: float = 0.05
    divergence_norm: float = 1e8
    endgame_iterations: int = 6


@dataclass
class PathResult:
    start: np.ndarray
    end: np.ndarray
    status: str
    steps: int
    residual: float = float("nan")

    @property
    def ok(self) -> bool:
        return self.status == PATH_SUCCESS


class _Compiled:
    """F_i(x, p) = sum_{a,c} K[i, a, c] X_a(x) P_c(p) with monomial vectors X and P."""

    def __init__(self, equations: Sequence[MultiPoly], n_unknowns: int) -> None:
        n = n_unknowns
        xexps: dict[tuple, int] = {}
        pexps: dict[tuple, int] = {}
        entries = []
        for i, eq in enumerate(equations):
            for exp, coeff in eq.terms.items():
                xe, pe = exp[:n], exp[n:]
                a = xexps.setdefault(xe, len(xexps))
                c = pexps.setdefault(pe, len(pexps))
                entries.append((i, a, c, complex(coeff)))
        self.n = n
        self.m = equations[0].nvars - n if equations else 0
        self.ex = np.array(list(xexps), dtype=int).reshape(len(xexps), n)
        self.ep = np.array(list(pexps), dtype=int).reshape(len(pexps), self.m)
        self.k = np.zeros((len(equations), len(xexps), len(pexps)), dtype=complex)
        for i, a, c, coeff in entries:
            self.k[i, a, c] += coeff

    @staticmethod
    def _monomials(values: np.ndarray, exps: np.ndarray) -> tuple[np.ndarray, list[np.ndarray], list[np.ndarray]]:
        """Monomial values plus per-variable factor tables for derivatives."""
        batch = values.shape[0]
        nmon, nv = exps.shape
        factors = []
        lowered = []
        for j in range(nv):
            top = int(exps[:, j].max()) if nmon else 0
            pw = values[:, j, None] ** np.arange(top + 1)
            factors.append(pw[:, exps[:, j]])
            low = np.maximum(exps[:, j] - 1, 0)
            lowered.append(exps[:, j] * pw[:, low])
        mons = np.ones((batch, nmon), dtype=complex)
        for f in factors:
            mons = mons * f
        return mons, factors, lowered

    @staticmethod
    def _partials(factors: list[np.ndarray], lowered: list[np.ndarray], batch: int, nmon: int) -> list[np.ndarray]:
        nv = len(factors)
        prefix = [np.ones((batch, nmon), dtype=complex)]
        for f in factors[:-1]:
            prefix.append(prefix[-1] * f)
        suffix = [np.ones((batch, nmon), dtype=complex)] * nv
        acc = np.ones((batch, nmon), dtype=complex)
        for j in range(nv - 1, -1, -1):
            suffix[j] = acc
            acc = acc * factors[j]
        return [lowered[j] * prefix[j] * suffix[j] for j in range(nv)]

    def evaluate(self, x: np.ndarray, p: np.ndarray) -> np.ndarray:
        xm, _, _ = self._monomials(x, self.ex)
        pm, _, _ = self._monomials(p, self.ep)
        return np.einsum("iac,ba,bc->bi", self.k, xm, pm)

    def evaluate_all(self, x: np.ndarray, p: np.ndarray, dp: Optional[np.ndarray] = None):
        """(F, J_x, dF/dp · dp) at a batch of points."""
        batch = x.shape[0]
        xm, xf, xl = self._monomials(x, self.ex)
        pm, pf, pl = self._monomials(p, self.ep)
        kp = np.einsum("iac,bc->bia", self.k, pm)
        f = np.einsum("bia,ba->bi", kp, xm)
        dx = self._partials(xf, xl, batch, self.ex.shape[0])
        jac = np.stack([np.einsum("bia,ba->bi", kp, d) for d in dx], axis=-1)
        if dp is None:
            return f, jac, None
        dpm = np.zeros_like(pm)
        for j, d in enumerate(self._partials(pf, pl, batch, self.ep.shape[0])):
            dpm = dpm + d * dp[:, j, None]
        fp = np.einsum("iac,ba,bc->bi", self.k, xm, dpm)
        return f, jac, fp


@dataclass
class ParametricSystem:
    """Square system in `n_unknowns` unknowns (first variables) and `n_params` parameters."""

    equations: list[MultiPoly]
    n_unknowns: int
    n_params: int
    fiber_degree: Optional[int] = None
    name: str = ""
    _compiled: Optional[_Compiled] = field(default=None, init=False, repr=False)

    def __post_init__(self) -> None:
        if len(self.equations) != self.n_unknowns:
            raise InvalidInputError(
                f"system {self.name or '?'} is not square: {len(self.equations)} equations, {self.n_unknowns} unknowns"
            )
        total = self.n_unknowns + self.n_params
        for eq in self.equations:
            if eq.nvars != total:
                raise InvalidInputError("equation variable count does not match unknowns + parameters")

    @property
    def compiled(self) -> _Compiled:
        if self._compiled is None:
            self._compiled = _Compiled(self.equations, self.n_unknowns)
        return self._compiled

    def specialize(self, params: Sequence[complex]) -> list[MultiPoly]:
        n = self.n_unknowns
        values = {n + j: complex(v) for j, v in enumerate(params)}
        return [eq.substitute(values, list(range(n))) for eq in self.equations]

    def residual(self, x: np.ndarray, params: np.ndarray) -> np.ndarray:
        x = np.atleast_2d(np.asarray(x, dtype=complex))
        p = np.broadcast_to(np.asarray(params, dtype=complex), (x.shape[0], self.n_params))
        f = self.compiled.evaluate(x, np.ascontiguousarray(p))
        return np.max(np.abs(f), axis=1) / (1.0 + np.max(np.abs(x), axis=1))


class Tracker:
    """Adaptive RK4 predictor with a Newton corrector, vectorized over paths."""

    def __init__(self, system: ParametricSystem, config: Optional[TrackerConfig] = None) -> None:
        self.system = system
        self.config = config or TrackerConfig()
        self._c = system.compiled

    def _velocity(self, x: np.ndarray, t: np.ndarray, p0: np.ndarray, dp: np.ndarray) -> np.ndarray:
        p = p0[None, :] + t[:, None] * dp[None, :]
        dpb = np.broadcast_to(dp, p.shape)
        _, jac, fp = self._c.evaluate_all(x, p, np.ascontiguousarray(dpb))
        return -safe_solve(jac, fp)

    def _predict(self, x, t, h, p0, dp) -> np.ndarray:
        hh = h[:, None]
        k1 = self._velocity(x, t, p0, dp)
        k2 = self._velocity(x + 0.5 * hh * k1, t + 0.5 * h, p0, dp)
        k3 = self._velocity(x + 0.5 * hh * k2, t + 0.5 * h, p0, dp)
        k4 = self._velocity(x + hh * k3, t + h, p0, dp)
        return x + hh / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)

    def _correct(self, x: np.ndarray, p: np.ndarray, iterations: int) -> tuple[np.ndarray, np.ndarray]:
        cfg = self.config
        ok = np.ones(x.shape[0], dtype=bool)
        converged = np.zeros(x.shape[0], dtype=bool)
        previous = None
        for k in range(iterations):
            f, jac, _ = self._c.evaluate_all(x, p)
            dx = safe_solve(jac, f)
            x = x - dx
            norm = np.linalg.norm(dx, axis=1)
            scale = 1.0 + np.linalg.norm(x, axis=1)
            converged = norm <= cfg.corrector_tol * scale
            if k == 0:
                ok &= norm <= cfg.first_update_tol * scale
            else:
                ok &= (norm <= 0.5 * previous) | converged
            previous = norm
            if converged.all():
                break
        ok &= converged & np.isfinite(x).all(axis=1)
        return x, ok

    def track_segment(self, p0: np.ndarray, p1: np.ndarray, starts: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Track a batch from p0 to p1; returns (endpoints, status codes, step counts)."""
        cfg = self.config
        x = np.array(starts, dtype=complex, copy=True)
        batch = x.shape[0]
        dp = p1 - p0
        t = np.zeros(batch)
        h = np.full(batch, cfg.initial_step)
        status = np.zeros(batch, dtype=int)  # 0 live, 1 done, 2 failed, 3 diverged
        steps = np.zeros(batch, dtype=int)
        streak = np.zeros(batch, dtype=int)
        if not np.any(dp):
            status[:] = 1
            return x, status, steps
        for _ in range(cfg.max_iterations):
            live = np.flatnonzero(status == 0)
            if live.size == 0:
                break
            ta = t[live]
            last = h[live] >= 1.0 - ta
            ha = np.where(last, 1.0 - ta, h[live])
            xp = self._predict(x[live], ta, ha, p0, dp)
            tn = np.where(last, 1.0, ta + ha)
            pn = p0[None, :] + tn[:, None] * dp[None, :]
            xc, ok = self._correct(xp, pn, cfg.newton_iterations)
            acc = live[ok]
            x[acc] = xc[ok]
            t[acc] = tn[ok]
            steps[acc] += 1
            streak[acc] += 1
            grow = acc[streak[acc] >= 3]
            h[grow] = np.minimum(2.0 * h[grow], cfg.max_step)
            streak[grow] = 0
            rej = live[~ok]
            h[rej] = ha[~ok] / 2.0
            streak[rej] = 0
            status[acc[t[acc] >= 1.0]] = 1
            big = live[np.max(np.abs(x[live]), axis=1) > cfg.divergence_norm]
            status[big[status[big] == 0]] = 3
            status[rej[(h[rej] < cfg.min_step) & (status[rej] == 0)]] = 2
        status[status == 0] = 2
        return x, status, steps

    def endgame(self, x: np.ndarray, p: np.ndarray) -> np.ndarray:
        """Extra Newton iterations at the path end."""
        pb = np.broadcast_to(p, (x.shape[0], p.shape[-1]))
        pb = np.ascontiguousarray(pb)
        for _ in range(self.config.endgame_iterations):
            f, jac, _ = self._c.evaluate_all(x, pb)
            dx = safe_solve(jac, f)
            good = np.isfinite(dx).all(axis=1)
            x = np.where(good[:, None], x - np.where(good[:, None], dx, 0), x)
        return x


def track(
    system: ParametricSystem,
    path: Sequence[Sequence[complex]],
    starts: np.ndarray,
    config: Optional[TrackerConfig] = None,
) -> list[PathResult]:
    """
    Follow `starts` along the piecewise-linear parameter path `path`.

    Every start gets a PathResult; failures are recorded, never dropped.
    A path that fails on one segment is not continued.
    """
    tracker = Tracker(system, config)
    waypoints = [np.asarray(w, dtype=complex).reshape(system.n_params) for w in path]
    x0 = np.atleast_2d(np.asarray(starts, dtype=complex))
    x = x0.copy()
    status = np.ones(x.shape[0], dtype=int)
    steps = np.zeros(x.shape[0], dtype=int)
    for a, b in zip(waypoints[:-1], waypoints[1:]):
        live = np.flatnonzero(status == 1)
        if live.size == 0:
            break
        xe, st, sp = tracker.track_segment(a, b, x[live])
        x[live] = xe
        status[live] = st
        steps[live] += sp
    end_params = waypoints[-1]
    done = np.flatnonzero(status == 1)
    if done.size:
        x[done] = tracker.endgame(x[done], end_params[None, :])
    residuals = system.residual(x, end_params) if x.size else np.zeros(0)
    names = {1: PATH_SUCCESS, 2: PATH_FAILED, 3: PATH_DIVERGED}
    results = []
    for i in range(x.shape[0]):
        results.append(PathResult(x0[i].copy(), x[i].copy(), names[int(status[i])], int(steps[i]), float(residuals[i])))
    failed = sum(1 for r in results if not r.ok)
    logger.debug("tracked %d paths over %d segments, %d not successful", len(results), len(waypoints) - 1, failed)
    return results


# ---------------------------------------------------------------------------
# Total-degree solving
# ---------------------------------------------------------------------------


@dataclass
class SolveResult:
    solutions: list[np.ndarray]
    paths: list[PathResult]
    singular: list[np.ndarray]

    @property
    def counts(self) -> dict[str, int]:
        out = {PATH_SUCCESS: 0, PATH_FAILED: 0, PATH_DIVERGED: 0}
        for p in self.paths:
            out[p.status] += 1
        return out


def total_degree_system(equations: Sequence[MultiPoly], gamma: complex) -> tuple[ParametricSystem, np.ndarray]:
    """H(x, t) = (1 - t) gamma (x_i^{d_i} - 1) + t F_i(x) with its start solutions."""
    n = len(equations)
    if n == 0 or any(eq.nvars != n for eq in equations):
        raise InvalidInputError("total-degree homotopy needs a square system")
    degrees = [max(1, eq.total_degree) for eq in equations]
    nv = n + 1
    t = MultiPoly.variable(n, nv)
    one_minus_t = MultiPoly.constant(1, nv) - t
    homotopy = []
    for i, eq in enumerate(equations):
        target = eq.normalized().extend(nv)
        start = MultiPoly.variable(i, nv) ** degrees[i] - MultiPoly.constant(1, nv)
        homotopy.append(one_minus_t * start * gamma + t * target)
    system = ParametricSystem(homotopy, n, 1, name="total-degree")
    roots_of_unity = [np.exp(2j * np.pi * np.arange(d) / d) for d in degrees]
    starts = np.array(list(itertools.product(*roots_of_unity)), dtype=complex).reshape(-1, n)
    return system, starts


def dedupe_points(points: Sequence[np.ndarray], tol: float = 1e-8) -> list[np.ndarray]:
    out: list[np.ndarray] = []
    for p in points:
        scale = 1.0 + np.max(np.abs(p))
        if all(np.max(np.abs(p - q)) > tol * scale for q in out):
            out.append(p)
    return out


def solve_total_degree(
    equations: Sequence[MultiPoly],
    rng: np.random.Generator,
    config: Optional[TrackerConfig] = None,
    max_norm: float = 1e6,
    cond_limit: float = 1e10,
) -> SolveResult:
    """All isolated nonsingular finite solutions reached from the total-degree start system."""
    gamma = random_gamma(rng)
    system, starts = total_degree_system(equations, gamma)
    results = track(system, [np.array([0.0]), np.array([1.0])], starts, config)
    target = [eq.normalized() for eq in equations]
    compiled = [CompiledForm(eq) for eq in target]
    top_degree = max(eq.total_degree for eq in equations)
    regular, singular = [], []
    for r in results:
        if not r.ok or np.max(np.abs(r.end)) > max_norm:
            continue
        point = r.end[None, :]
        jac = np.array([c.gradient(point)[0] for c in compiled])
        value = max(abs(complex(c(point)[0])) for c in compiled)
        if value > 1e-8 * (1.0 + np.max(np.abs(r.end))) ** top_degree:
            continue
        if np.linalg.cond(jac) > cond_limit:
            singular.append(r.end)
        else:
            regular.append(r.end)
    sols = dedupe_points(regular)
    logger.info(
        "total-degree solve: %d paths, %d regular solutions, %d singular endpoints",
        len(results), len(sols), len(singular),
    )
    return SolveResult(sols, results, singular)


def find_singular_points(form: MultiPoly, rng: np.random.Generator, tol: float = 1e-8) -> list[np.ndarray]:
    """
    Common zeros of all partial derivatives of a homogeneous form.

    Solves nvars-1 random combinations of the partials together with a random
    affine patch, then keeps endpoints where every partial vanishes.
    """
    nv = form.nvars
    f = form.normalized()
    partials = [f.diff(j) for j in range(nv)]
    mix = (rng.standard_normal((nv - 1, nv)) + 1j * rng.standard_normal((nv - 1, nv)))
    patch = rng.standard_normal(nv) + 1j * rng.standard_normal(nv)
    eqs = []
    for row in mix:
        combo = MultiPoly(nv)
        for c, g in zip(row, partials):
            combo = combo + g * complex(c)
        eqs.append(combo)
    eqs.append(MultiPoly.linear([complex(c) for c in patch]) - MultiPoly.constant(1, nv))
    result = solve_total_degree(eqs, rng, max_norm=1e8, cond_limit=float("inf"))
    compiled = [CompiledForm(g) for g in partials]
    found = []
    for x in result.solutions + result.singular:
        xn = x / np.linalg.norm(x)
        if max(abs(complex(c(xn[None, :])[0])) for c in compiled) < tol:
            found.append(xn)
    return dedupe_points(found, 1e-6)
