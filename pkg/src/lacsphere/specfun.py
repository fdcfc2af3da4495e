"""Gegenbauer polynomials, degree-index differences, and difference-kernel envelopes.

All evaluation is by forward three-term recurrence; the normalized polynomials
R_n = C_n^lam / C_n^lam(1) have their own overflow-free recurrence

    R_{n+1}(t) = (2 (n + lam) t R_n(t) - n R_{n-1}(t)) / (n + 2 lam),

obtained by dividing the classical recurrence through by C_{n+1}^lam(1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegreeOverflowError, DomainError


def surface_area(d):
    """Surface area of the unit sphere S^d embedded in R^{d+1}."""
    return 2.0 * math.pi ** ((d + 1) / 2.0) / math.gamma((d + 1) / 2.0)


@dataclass(frozen=True)
class DimensionParams:
    """Ambient geometry constants for S^d."""

    d: int

    def __post_init__(self):
        if self.d < 2:
            raise DomainError(f"sphere dimension must be >= 2, got {self.d}")

    @property
    def lam(self):
        return (self.d - 1) / 2.0

    @property
    def omega_d(self):
        return surface_area(self.d)

    @property
    def omega_dm1(self):
        return surface_area(self.d - 1)


@dataclass(frozen=True)
class DifferenceSpec:
    """Forward difference acting on the degree index: order ell, step h."""

    order: int
    step: int = 2

    def __post_init__(self):
        if self.order < 0:
            raise DomainError(f"difference order must be >= 0, got {self.order}")
        if self.step not in (1, 2):
            raise DomainError(f"difference step must be 1 or 2, got {self.step}")


def _check_t(t):
    t = np.asarray(t, dtype=float)
    if np.any(np.abs(t) > 1.0 + 1e-12):
        raise DomainError("argument t must lie in [-1, 1]")
    return np.clip(t, -1.0, 1.0)


def gegenbauer_eval(lam, n, t):
    """C_n^lam(t) by the forward recurrence from C_0 = 1, C_1 = 2 lam t."""
    if lam <= 0:
        raise DomainError(f"Gegenbauer parameter must be positive, got {lam}")
    if n < 0:
        raise DomainError(f"degree must be >= 0, got {n}")
    t = _check_t(t)
    c_prev = np.ones_like(t)
    if n == 0:
        return c_prev if c_prev.ndim else float(c_prev)
    c = 2.0 * lam * t
    for k in range(1, n):
        c, c_prev = (2.0 * (k + lam) * t * c - (k + 2.0 * lam - 1.0) * c_prev) / (k + 1.0), c
    return c if c.ndim else float(c)


def gegenbauer_at_one(lam, n):
    """C_n^lam(1) as the running product prod_{k<n} (2 lam + k) / (k + 1)."""
    if lam <= 0:
        raise DomainError(f"Gegenbauer parameter must be positive, got {lam}")
    value = 1.0
    for k in range(n):
        value *= (2.0 * lam + k) / (k + 1.0)
        if not math.isfinite(value):
            raise DegreeOverflowError(
                f"C_n^lam(1) overflowed at degree {k + 1} (lam={lam})", degree=k + 1
            )
    return value


def zonal_synthesis(coeffs, lam, t):
    """Evaluate sum_k a_k R_k(t) in one pass of the normalized recurrence.

    ``coeffs`` maps degree -> coefficient; only the requested degrees are
    accumulated, so memory stays O(1) per evaluation point.
    """
    if lam <= 0:
        raise DomainError(f"Gegenbauer parameter must be positive, got {lam}")
    t = _check_t(t)
    scalar = t.ndim == 0
    t = np.atleast_1d(t)
    out = np.zeros_like(t)
    if coeffs:
        nmax = max(coeffs)
        r_prev = np.ones_like(t)
        a = coeffs.get(0, 0.0)
        if a:
            out += a * r_prev
        if nmax >= 1:
            r = t.copy()
            a = coeffs.get(1, 0.0)
            if a:
                out += a * r
            for k in range(1, nmax):
                r, r_prev = (2.0 * (k + lam) * t * r - k * r_prev) / (k + 2.0 * lam), r
                a = coeffs.get(k + 1, 0.0)
                if a:
                    out += a * r
    return float(out[0]) if scalar else out


def normalized_eval(dim, n, t):
    """Normalized Gegenbauer R_n(t) = C_n^lam(t) / C_n^lam(1), lam = (d-1)/2."""
    if n < 0:
        raise DomainError(f"degree must be >= 0, got {n}")
    return zonal_synthesis({n: 1.0}, dim.lam, t)


def difference_coeffs(n, spec):
    """Expansion of Delta_h^ell R_n over the R_k basis: degree -> signed binomial."""
    return {n + spec.step * j: float((-1) ** j * math.comb(spec.order, j))
            for j in range(spec.order + 1)}


def difference_eval(dim, n, spec, t):
    """Delta_h^ell R_n(t) = sum_j (-1)^j binom(ell, j) R_{n + h j}(t)."""
    if n < 0:
        raise DomainError(f"degree must be >= 0, got {n}")
    return zonal_synthesis(difference_coeffs(n, spec), dim.lam, t)


def bound_envelope(dim, n, ell, theta):
    """Pointwise envelope for |Delta_2^ell R_n(cos theta)| without its constant.

    theta^ell (1 + n theta)^{-(d-1)/2} on [0, pi/2], reflected on [pi/2, pi].
    """
    theta = np.asarray(theta, dtype=float)
    if np.any(theta < 0.0) or np.any(theta > math.pi + 1e-12):
        raise DomainError("theta must lie in [0, pi]")
    scalar = theta.ndim == 0
    theta = np.atleast_1d(theta)
    phi = np.where(theta <= math.pi / 2.0, theta, math.pi - theta)
    phi = np.maximum(phi, 0.0)
    out = phi ** ell * (1.0 + n * phi) ** (-dim.lam)
    return float(out[0]) if scalar else out


def flat_envelope(dim, n, ell):
    """Global envelope n^{-l0}, l0 = min(ell, (d-1)/2), for |Delta_2^ell R_n|.

    The minimum acts on the exponents: pointwise the theta-envelope peaks at
    theta ~ 1/n when ell < (d-1)/2 (value ~ n^-ell) and at theta ~ pi/2
    otherwise (value ~ n^-(d-1)/2), so the uniform bound is the larger of
    n^-ell and n^-(d-1)/2.
    """
    if n < 1:
        raise DomainError(f"degree must be >= 1, got {n}")
    return max(float(n) ** (-ell), float(n) ** (-dim.lam))


@dataclass(frozen=True)
class BoundConstantReport:
    """Empirical constants hiding in the difference-kernel estimates.

    ``per_degree`` measures against the pointwise theta-envelope,
    ``per_degree_flat`` against the global min(n^-ell, n^-(d-1)/2) envelope;
    ``global_max`` is the largest pointwise ratio seen over all degrees.
    """

    dim: DimensionParams
    ell: int
    grid_size: int
    per_degree: dict
    per_degree_flat: dict
    global_max: float

    def spread(self, flat=False):
        values = list((self.per_degree_flat if flat else self.per_degree).values())
        return max(values) / min(values)


def empirical_bound_constant(dim, degrees, ell, grid_size=4096):
    """Measure max_theta |Delta_2^ell R_n(cos theta)| / envelope(theta) per degree.

    The theta grid is the midpoint grid on (0, pi): it excludes the endpoint
    zeros of both numerator and envelope and is symmetric under reflection.
    """
    if grid_size < 64:
        raise DomainError(f"grid_size must be >= 64, got {grid_size}")
    if not degrees:
        raise DomainError("degrees must be nonempty")
    theta = (np.arange(grid_size) + 0.5) * (math.pi / grid_size)
    t = np.cos(theta)
    spec = DifferenceSpec(order=ell, step=2)
    per_degree = {}
    per_degree_flat = {}
    for n in degrees:
        diff = np.abs(zonal_synthesis(difference_coeffs(n, spec), dim.lam, t))
        env = bound_envelope(dim, n, ell, theta)
        per_degree[n] = float(np.max(diff / env))
        per_degree_flat[n] = float(np.max(diff) / flat_envelope(dim, n, ell))
    return BoundConstantReport(
        dim=dim,
        ell=ell,
        grid_size=grid_size,
        per_degree=per_degree,
        per_degree_flat=per_degree_flat,
        global_max=max(per_degree.values()),
    )
