"""Extremal-ratio search over lacunary coefficient space and exponent sweeps.

The objective is the Nikolskii ratio restricted to the unit L^p sphere; it is
scale invariant, so the simplex runs in raw coefficient space and restart 0 is
always the single harmonic at the top spectrum degree (the known-good
candidate the search must dominate).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .polyspace import (
    NikolskiiReport,
    S2Polynomial,
    ZonalPolynomial,
    nikolskii_ratio,
    validate_spectrum,
)


def _nelder_mead(fn, x0, scale=0.25, budget=400, f_tol=1e-12, x_tol=1e-10):
    """Minimal reflection/expansion/contraction simplex; returns (x, f, evals)."""
    n = len(x0)
    simplex = [np.array(x0, dtype=float)]
    for i in range(n):
        p = np.array(x0, dtype=float)
        p[i] += scale if p[i] == 0.0 else scale * abs(p[i])
        simplex.append(p)
    values = [fn(p) for p in simplex]
    evals = n + 1
    while evals < budget:
        order = np.argsort(values)
        simplex = [simplex[i] for i in order]
        values = [values[i] for i in order]
        if values[-1] - values[0] <= f_tol and max(
            float(np.max(np.abs(p - simplex[0]))) for p in simplex
        ) <= x_tol:
            break
        centroid = np.mean(simplex[:-1], axis=0)
        xr = centroid + (centroid - simplex[-1])
        fr = fn(xr)
        evals += 1
        if fr < values[0]:
            xe = centroid + 2.0 * (centroid - simplex[-1])
            fe = fn(xe)
            evals += 1
            if fe < fr:
                simplex[-1], values[-1] = xe, fe
            else:
                simplex[-1], values[-1] = xr, fr
        elif fr < values[-2]:
            simplex[-1], values[-1] = xr, fr
        else:
            xc = centroid + 0.5 * (simplex[-1] - centroid)
            fc = fn(xc)
            evals += 1
            if fc < values[-1]:
                simplex[-1], values[-1] = xc, fc
            else:
                for i in range(1, n + 1):
                    simplex[i] = simplex[0] + 0.5 * (simplex[i] - simplex[0])
                    values[i] = fn(simplex[i])
                evals += n
    best = int(np.argmin(values))
    return simplex[best], values[best], evals


@dataclass(frozen=True)
class ExtremalReport:
    spectrum: object
    d: int
    p: float
    q: float
    best_coefficients: np.ndarray
    best_ratio: float
    restart_ratios: tuple
    restarts_used: int
    evaluations: int


def _block_sizes(spectrum, s2_blocks):
    if s2_blocks:
        return [2 * n + 1 for n in spectrum.degrees]
    return [1] * len(spectrum.degrees)


def _build_candidate(x, spectrum, dim, s2_blocks):
    if s2_blocks:
        blocks = {}
        offset = 0
        for n in spectrum.degrees:
            width = 2 * n + 1
            blocks[n] = np.array(x[offset:offset + width])
            offset += width
        return S2Polynomial(blocks)
    return ZonalPolynomial(dim, dict(zip(spectrum.degrees, x)))


def maximize_ratio(spectrum, dim, p, q, restarts=4, seed=0, budget=600, s2_blocks=False):
    """Derivative-free ascent of the Nikolskii ratio over the coefficient space."""
    if not (0 < p < q <= math.inf):
        raise DomainError(f"need 0 < p < q <= inf, got p={p}, q={q}")
    if restarts < 1:
        raise DomainError(f"restarts must be >= 1, got {restarts}")
    if s2_blocks and dim.d != 2:
        raise DomainError("S2-block search requires d = 2")
    sizes = _block_sizes(spectrum, s2_blocks)
    dim_x = sum(sizes)
    evaluations = 0

    def objective(x):
        nonlocal evaluations
        evaluations += 1
        peak = float(np.max(np.abs(x)))
        if peak < 1e-14:
            return 1e18
        f = _build_candidate(x / peak, spectrum, dim, s2_blocks)
        if f.is_zero():
            return 1e18
        return -nikolskii_ratio(f, p, q)

    rng = np.random.default_rng(seed)
    starts = [np.concatenate([np.zeros(dim_x - sizes[-1]), np.ones(sizes[-1])])]
    for _ in range(restarts - 1):
        starts.append(rng.standard_normal(dim_x))

    per_restart = max(budget // restarts, 3 * (dim_x + 1))
    best_x, best_f = starts[0], objective(starts[0])
    restart_ratios = []
    for x0 in starts:
        x, fval, _ = _nelder_mead(objective, x0, budget=per_restart)
        restart_ratios.append(-fval)
        if fval < best_f:
            best_x, best_f = x, fval

    f_best = _build_candidate(best_x, spectrum, dim, s2_blocks)
    # report coefficients on the unit L^p (or L^2 coefficient) sphere
    from .polyspace import _norm

    norm_p = _norm(f_best, p)
    coeffs = np.asarray(best_x, dtype=float) / norm_p
    return ExtremalReport(
        spectrum=spectrum,
        d=dim.d,
        p=p,
        q=q,
        best_coefficients=coeffs,
        best_ratio=-best_f,
        restart_ratios=tuple(restart_ratios),
        restarts_used=len(starts),
        evaluations=evaluations,
    )


@dataclass(frozen=True)
class ExponentFit:
    points: tuple
    slope: float
    intercept: float
    r_squared: float


def exponent_fit(points):
    """Least-squares line through (log n, log value)."""
    points = [(int(n), float(v)) for n, v in points]
    if len(points) < 3:
        raise DomainError(f"need at least 3 points, got {len(points)}")
    if any(n < 2 for n, _ in points):
        raise DomainError("all n must be >= 2")
    if any(v <= 0 for _, v in points):
        raise DomainError("all values must be positive")
    x = np.log([n for n, _ in points])
    y = np.log([v for _, v in points])
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ss_tot = float(np.sum((y - np.mean(y)) ** 2))
    r2 = 1.0 if ss_tot == 0.0 else 1.0 - float(np.sum(resid**2)) / ss_tot
    return ExponentFit(points=tuple(points), slope=float(slope), intercept=float(intercept),
                       r_squared=r2)


def packed_spectrum(n, ell, m_rule="max"):
    """Degrees n - j*(2*ell+1) descending from n; m_rule is 'max' or a fixed m."""
    gap = 2 * ell + 1
    if m_rule == "max":
        m = n // gap
    else:
        m = int(m_rule)
        if m * gap > n:
            raise DomainError(f"fixed m={m} does not fit below n={n} with gap {gap}")
    degrees = [n - j * gap for j in range(m, -1, -1)]
    return validate_spectrum(degrees, ell)


@dataclass(frozen=True)
class SweepResult:
    family: str
    reports: tuple
    fit_ratio: ExponentFit
    fit_ratio_over_bound: ExponentFit
    warnings: tuple


def sweep(family, dim, ell, p, q, n_grid, m_rule="max", seed=0, restarts=3, budget=400,
          tol=1e-9):
    """Per-degree Nikolskii reports plus fitted growth exponents.

    Families: single_harmonic (f = R_n zonal, bound m = 1), lacunary_random
    (random signs on a packed spectrum), lacunary_extremal (simplex search on
    the packed spectrum).
    """
    from .polyspace import hypothesis_warnings

    reports = []
    for n in n_grid:
        if family == "single_harmonic":
            spectrum = validate_spectrum([n], ell)
            f = ZonalPolynomial(dim, {n: 1.0})
            ratio = 1.0 if p == q else nikolskii_ratio(f, p, q, tol=tol)
        elif family == "lacunary_random":
            spectrum = packed_spectrum(n, ell, m_rule)
            f = random_lacunary_zonal_for_sweep(spectrum, dim, seed, n)
            ratio = 1.0 if p == q else nikolskii_ratio(f, p, q, tol=tol)
        elif family == "lacunary_extremal":
            spectrum = packed_spectrum(n, ell, m_rule)
            if p == q:
                ratio = 1.0
            else:
                report = maximize_ratio(spectrum, dim, p, q, restarts=restarts,
                                        seed=seed + n, budget=budget)
                ratio = report.best_ratio
        else:
            raise DomainError(f"unknown sweep family {family!r}")
        m_bound = max(spectrum.m, 1)
        reports.append(NikolskiiReport(d=dim.d, n=spectrum.n, m=m_bound, ell=ell,
                                       p=p, q=q, ratio=ratio))

    fit_ratio = exponent_fit([(r.n, r.ratio) for r in reports])
    fit_over = exponent_fit([(r.n, r.ratio / r.theorem_bound) for r in reports])
    warnings = hypothesis_warnings(p, q)
    return SweepResult(family=family, reports=tuple(reports), fit_ratio=fit_ratio,
                       fit_ratio_over_bound=fit_over, warnings=warnings)


def random_lacunary_zonal_for_sweep(spectrum, dim, seed, n):
    """Seeded random-sign coefficients, independent per sweep point."""
    from .polyspace import random_lacunary_zonal

    return random_lacunary_zonal(spectrum, dim, seed * 1_000_003 + n, distribution="signs")
