"""Gauss-Jacobi quadrature for the weight (1-t^2)^alpha and sphere norms.

Zonal integrals over S^d reduce to one dimension through

    int_{S^d} g(x.e) dsigma(x) = omega_{d-1} int_{-1}^{1} g(t) (1-t^2)^{(d-2)/2} dt,

so a single symmetric-Jacobi rule family covers every dimension.  Nodes are
roots of the degree-N Jacobi polynomial P_N^{(alpha,alpha)}.  For moderate N
they are located by safeguarded Newton iteration inside interlacing brackets
built degree by degree; for large N (reached only through adaptive doubling)
Newton runs in the theta variable from Szego-type angle guesses and the result
is certified by interlacing, symmetry, and weight-sum checks.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass

import numpy as np

from .errors import CapacityError, ConvergenceError, DomainError
from .specfun import zonal_synthesis

_LADDER_LIMIT = 300
_MAX_NODES = 1 << 16

_rule_cache = {}


def _jacobi_pair(alpha, n, x):
    """Value and derivative of the Jacobi polynomial P_n^{(alpha,alpha)} at x."""
    x = np.asarray(x, dtype=float)
    p_prev = np.ones_like(x)
    dp_prev = np.zeros_like(x)
    if n == 0:
        return p_prev, dp_prev
    p = (alpha + 1.0) * x
    dp = np.full_like(x, alpha + 1.0)
    for k in range(2, n + 1):
        s = 2.0 * k + 2.0 * alpha
        a1 = 2.0 * k * (k + 2.0 * alpha) * (s - 2.0)
        a3 = (s - 1.0) * s * (s - 2.0)
        a4 = 2.0 * (k + alpha - 1.0) ** 2 * s
        p, p_prev = (a3 * x * p - a4 * p_prev) / a1, p
        dp, dp_prev = (a3 * (p_prev + x * dp) - a4 * dp_prev) / a1, dp
    return p, dp


def _polish(alpha, n, x, passes=2):
    """Pure Newton polish of near-converged root estimates."""
    for _ in range(passes):
        p, dp = _jacobi_pair(alpha, n, x)
        with np.errstate(divide="ignore", invalid="ignore"):
            step = p / dp
        x = np.clip(x - np.where(np.isfinite(step), step, 0.0), -1.0, 1.0)
    return x


def _newton_in_brackets(alpha, n, lo, hi):
    """Safeguarded Newton for all roots of P_n^{(alpha,alpha)} in given brackets."""
    x = 0.5 * (lo + hi)
    s_lo = np.sign(_jacobi_pair(alpha, n, lo)[0])
    active = np.ones(x.shape, dtype=bool)
    for _ in range(200):
        p, dp = _jacobi_pair(alpha, n, x)
        same = np.sign(p) == s_lo
        lo = np.where(same & active, x, lo)
        hi = np.where(~same & active, x, hi)
        with np.errstate(divide="ignore", invalid="ignore"):
            xn = x - p / dp
        fallback = ~np.isfinite(xn) | (xn < lo) | (xn > hi)
        xn = np.where(fallback, 0.5 * (lo + hi), xn)
        moved = np.abs(xn - x) > 1e-13 * (1.0 + np.abs(xn))
        x = np.where(active, xn, x)
        active &= moved
        if not active.any():
            return _polish(alpha, n, x)
    raise ConvergenceError(f"bracketed Newton failed for Jacobi roots (alpha={alpha}, N={n})")


_ladder_cache = {}


def _nodes_by_ladder(alpha, n):
    """Roots of P_n^{(alpha,alpha)} via the interlacing ladder of lower degrees."""
    ladder = _ladder_cache.setdefault(float(alpha), [np.zeros(1)])
    while len(ladder) < n:
        k = len(ladder) + 1
        roots = ladder[-1]
        lo = np.concatenate(([-1.0], roots))
        hi = np.concatenate((roots, [1.0]))
        ladder.append(np.sort(_newton_in_brackets(alpha, k, lo, hi)))
    return ladder[n - 1].copy()


def _half_nodes_by_theta_newton(alpha, n):
    """Nonnegative roots for large N: Newton in theta from Szego angle guesses.

    The weight is even, so only the half with x >= 0 is computed (the middle
    root of odd N sits exactly at theta = pi/2); each iteration evaluates the
    recurrence only at the still-active roots.
    """
    lam = alpha + 0.5
    half = (n + 1) // 2
    k = np.arange(1, half + 1, dtype=float)
    theta = (k + (lam - 1.0) / 2.0) * math.pi / (n + lam)
    active = np.ones(half, dtype=bool)
    for _ in range(60):
        ths = theta[active]
        x = np.cos(ths)
        p, dp = _jacobi_pair(alpha, n, x)
        with np.errstate(divide="ignore", invalid="ignore"):
            step = p / (-np.sin(ths) * dp)
        step = np.where(np.isfinite(step), step, 0.0)
        theta[active] = ths - step
        # stop at ~1e-11 in theta; the x-space polish finishes quadratically
        still = np.abs(step) > 1e-11
        active[active] = still
        if not still.any():
            break
    else:
        raise ConvergenceError(f"theta-Newton failed for Jacobi roots (alpha={alpha}, N={n})")
    xs = np.sort(_polish(alpha, n, np.cos(theta)))
    if n % 2 == 1:
        xs[0] = 0.0
    if len(xs) != half or np.any(np.diff(xs) <= 0) or xs[0] < 0.0:
        raise ConvergenceError(
            f"theta-Newton produced non-interlacing roots (alpha={alpha}, N={n})"
        )
    return xs


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes and weights for the weight (1-t^2)^alpha on [-1, 1]."""

    alpha: float
    nodes: np.ndarray
    weights: np.ndarray
    exactness_degree: int

    def integrate_values(self, values):
        return float(np.dot(self.weights, values))

    def integrate(self, fn):
        return self.integrate_values(fn(self.nodes))

    @property
    def weight_sum_exact(self):
        """Analytic total mass sqrt(pi) Gamma(alpha+1) / Gamma(alpha+3/2)."""
        return math.sqrt(math.pi) * math.gamma(self.alpha + 1.0) / math.gamma(self.alpha + 1.5)

    def to_csv(self):
        buf = io.StringIO()
        buf.write("node,weight\n")
        for x, w in zip(self.nodes, self.weights):
            buf.write(f"{float(x)!r},{float(w)!r}\n")
        return buf.getvalue()


def gauss_jacobi_rule(alpha, n):
    """N-point Gauss-Jacobi rule for the symmetric weight (1-t^2)^alpha."""
    if alpha < -0.5:
        raise DomainError(f"Jacobi exponent must be >= -0.5, got {alpha}")
    if n < 1:
        raise DomainError(f"node count must be >= 1, got {n}")
    key = (float(alpha), int(n))
    cached = _rule_cache.get(key)
    if cached is not None:
        return cached

    if n == 1:
        half = np.zeros(1)
    elif n <= _LADDER_LIMIT:
        nodes = _nodes_by_ladder(alpha, n)
        nodes = 0.5 * (nodes - nodes[::-1])
        half = nodes[n // 2:]
    else:
        half = _half_nodes_by_theta_newton(alpha, n)

    log_c = (
        (2.0 * alpha + 1.0) * math.log(2.0)
        + 2.0 * math.lgamma(n + alpha + 1.0)
        - math.lgamma(n + 1.0)
        - math.lgamma(n + 2.0 * alpha + 1.0)
    )
    _, dp = _jacobi_pair(alpha, n, half)
    w_half = math.exp(log_c) / ((1.0 - half**2) * dp**2)
    # mirror the x >= 0 half; node symmetry is exact by construction
    neg = n // 2
    nodes = np.concatenate((-half[::-1][:neg], half))
    weights = np.concatenate((w_half[::-1][:neg], w_half))

    total_exact = math.sqrt(math.pi) * math.gamma(alpha + 1.0) / math.gamma(alpha + 1.5)
    total = float(np.sum(weights))
    if abs(total - total_exact) > 1e-9 * total_exact:
        raise ConvergenceError(
            f"weight sum check failed for alpha={alpha}, N={n}",
            last_values=(total, total_exact),
        )
    # pin the zeroth moment exactly; derivative-formula weights carry O(N eps)
    # recurrence rounding at large N
    weights *= total_exact / total

    rule = QuadratureRule(
        alpha=float(alpha), nodes=nodes, weights=weights, exactness_degree=2 * n - 1
    )
    _rule_cache[key] = rule
    return rule


def _next_pow2(n):
    return 1 << max(0, (int(n) - 1)).bit_length()


def _is_even_integer(p):
    return p == int(p) and int(p) % 2 == 0 and p > 0


def _sign_change_angles(coeffs, lam, deg):
    """Theta positions of the real zeros of g(cos theta) in (0, pi).

    Zeros come from the Chebyshev companion matrix of g; a missed or spurious
    breakpoint only changes the convergence rate of the split rule, never the
    limit, so near-real ambiguity is resolved permissively.
    """
    cheb = np.polynomial.chebyshev.Chebyshev.interpolate(
        lambda t: zonal_synthesis(coeffs, lam, t), deg
    )
    roots = cheb.roots()
    real = roots[np.abs(roots.imag) < 1e-8].real
    real = real[(real > -1.0 + 1e-13) & (real < 1.0 - 1e-13)]
    return np.sort(np.arccos(np.clip(real, -1.0, 1.0)))


def zonal_lp_norm(f, p, dim=None, tol=1e-10):
    """L^p(S^d) quasi-norm of the zonal polynomial f, 0 < p < infinity.

    Even integer p is integrated exactly by a single Gauss-Jacobi rule.  For
    other p the integral is taken in theta, where the weight is the analytic
    sin^{d-1}(theta); the interval splits at the sign changes of g so |g|^p is
    smooth on every piece, and the per-piece node count doubles until
    successive values agree to relative ``tol``.
    """
    if not (0 < p < math.inf):
        raise DomainError(f"p must lie in (0, inf), got {p}")
    dim = dim or f.dim
    alpha = (dim.d - 2) / 2.0
    coeffs = dict(f.coeffs)
    deg = max(coeffs, default=0)

    if _is_even_integer(p):
        rule = gauss_jacobi_rule(alpha, _next_pow2(max(int(p) * deg // 2 + 1, 8)))
        g = zonal_synthesis(coeffs, dim.lam, rule.nodes)
        return (dim.omega_dm1 * float(np.dot(rule.weights, np.abs(g) ** p))) ** (1.0 / p)

    if not coeffs:
        return 0.0
    breaks = np.concatenate(([0.0], _sign_change_angles(coeffs, dim.lam, deg), [math.pi]))
    widths = 0.5 * np.diff(breaks)
    centers = 0.5 * (breaks[:-1] + breaks[1:])
    n_nodes = 32
    prev = None
    while n_nodes <= _MAX_NODES:
        rule = gauss_jacobi_rule(0.0, n_nodes)
        theta = (widths[:, None] * rule.nodes[None, :] + centers[:, None]).ravel()
        g = zonal_synthesis(coeffs, dim.lam, np.cos(theta))
        part = (np.abs(g) ** p * np.sin(theta) ** (dim.d - 1)).reshape(len(widths), -1)
        integral = float(np.dot(part @ rule.weights, widths))
        v = (dim.omega_dm1 * integral) ** (1.0 / p)
        if prev is not None and abs(v - prev) <= tol * max(abs(v), 1e-300):
            return v
        prev = v
        n_nodes *= 2
    raise ConvergenceError(
        f"zonal L^{p} norm did not stabilize to {tol} within {_MAX_NODES} nodes per piece",
        last_values=(prev, v),
    )


def zonal_sup_norm(f, grid_size=None, dim=None):
    """Sup norm of the zonal polynomial over [-1, 1].

    Samples on a theta-uniform grid, one parabolic refinement at the argmax.
    """
    dim = dim or f.dim
    coeffs = dict(f.coeffs)
    deg = max(coeffs, default=0)
    if grid_size is None:
        grid_size = max(16 * deg, 512)
    elif grid_size < 16 * deg:
        raise DomainError(f"grid_size must be >= 16*deg(f) = {16 * deg}, got {grid_size}")
    theta = np.linspace(0.0, math.pi, grid_size)
    g = np.abs(zonal_synthesis(coeffs, dim.lam, np.cos(theta)))
    i = int(np.argmax(g))
    best = float(g[i])
    if 0 < i < grid_size - 1:
        y0, y1, y2 = g[i - 1], g[i], g[i + 1]
        denom = y0 - 2.0 * y1 + y2
        if denom < 0:
            shift = 0.5 * (y0 - y2) / denom
            th = theta[i] + shift * (theta[1] - theta[0])
            best = max(best, abs(float(zonal_synthesis(coeffs, dim.lam, math.cos(th)))))
    return best


@dataclass(frozen=True)
class SphereGridS2:
    """Product quadrature grid on S^2: Gauss-Legendre polar x equispaced azimuth."""

    polar: QuadratureRule
    azimuths: np.ndarray
    weights: np.ndarray  # flattened over (polar node, azimuth)

    @property
    def n_polar(self):
        return len(self.polar.nodes)

    @property
    def n_azimuth(self):
        return len(self.azimuths)

    @property
    def exactness_degree(self):
        return min(2 * self.n_polar - 1, self.n_azimuth - 1)

    @property
    def cos_theta(self):
        return self.polar.nodes

    def points(self):
        """Cartesian coordinates of all grid nodes, shape (L*M, 3)."""
        t = self.polar.nodes[:, None]
        s = np.sqrt(np.maximum(0.0, 1.0 - t**2))
        x = s * np.cos(self.azimuths)[None, :]
        y = s * np.sin(self.azimuths)[None, :]
        z = t * np.ones_like(self.azimuths)[None, :]
        return np.stack([x.ravel(), y.ravel(), z.ravel()], axis=1)


def s2_product_rule(L):
    """L-point Gauss-Legendre rule in cos(theta) crossed with 2L+1 azimuths."""
    if L < 1:
        raise DomainError(f"polar node count must be >= 1, got {L}")
    polar = gauss_jacobi_rule(0.0, L)
    m = 2 * L + 1
    azimuths = 2.0 * math.pi * np.arange(m) / m
    weights = (polar.weights[:, None] * (2.0 * math.pi / m)).repeat(m, axis=1)
    return SphereGridS2(polar=polar, azimuths=azimuths, weights=weights.ravel())


def s2_lp_norm(values, p, grid):
    """L^p quasi-norm on S^2 from grid samples; p = inf takes the max."""
    values = np.asarray(values, dtype=float)
    if values.shape != grid.weights.shape:
        raise DomainError(
            f"values length {values.shape} does not match grid {grid.weights.shape}"
        )
    if p == math.inf:
        return float(np.max(np.abs(values)))
    if p <= 0:
        raise DomainError(f"p must be positive, got {p}")
    return float(np.dot(grid.weights, np.abs(values) ** p)) ** (1.0 / p)
