"""The difference kernel H and the operator T that reproduces lacunary polynomials.

For a spectrum {n_0, ..., n_m} with gaps >= 2*ell + 1 the kernel

    H(t) = sum_k c_{n_k} sum_{j=0}^{ell} (-1)^j binom(ell, j) R_{n_k + 2j}(t)

defines T g(x) = (1/omega_d) int g(y) H(x.y) dsigma(y).  By the Funk-Hecke
diagonalization T acts on degree blocks through scalar multipliers, equal to 1
at every spectrum degree, so T f = f on the whole lacunary class.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import CapacityError, DomainError, SpectrumError
from .polyspace import S2Polynomial, ZonalPolynomial, ell_zero, synthesize_s2
from .quadrature import zonal_sup_norm
from .specfun import gegenbauer_at_one, zonal_synthesis


def c_n(dim, n):
    """Normalization ((n+lam)/lam) C_n^lam(1) of the reproducing identity.

    This is the constant for which P(x) = (c_n/omega_d) int P(y) R_n(x.y) dsigma(y)
    holds exactly on H_n^d; it grows like n^{d-1} and equals 2n+1 when d = 2.
    """
    if n < 0:
        raise DomainError(f"degree must be >= 0, got {n}")
    lam = dim.lam
    return (n + lam) / lam * gegenbauer_at_one(lam, n)


@dataclass(frozen=True)
class ReproducingKernel:
    """Kernel expansion plus the degree-indexed multipliers of T."""

    spectrum: object
    dim: object
    expansion: ZonalPolynomial
    multipliers: dict

    @property
    def degree(self):
        return self.expansion.degree

    def to_json(self):
        return {
            "v": 1,
            "d": self.dim.d,
            "l": self.spectrum.ell,
            "spectrum": list(self.spectrum.degrees),
            "expansion": [[k, v] for k, v in self.expansion.coeffs.items()],
            "multipliers": [[k, v] for k, v in sorted(self.multipliers.items())],
        }


def build_kernel(spectrum, dim):
    """Construct H and the multipliers for a validated lacunary spectrum."""
    ell = spectrum.ell
    expansion = {}
    multipliers = {}
    for n_k in spectrum.degrees:
        c_base = c_n(dim, n_k)
        for j in range(ell + 1):
            deg = n_k + 2 * j
            sign_binom = (-1) ** j * math.comb(ell, j)
            assert deg not in expansion, "degree collision: spectrum gaps too small"
            expansion[deg] = c_base * sign_binom
            # j = 0 gives exactly 1, the reproducing multiplier
            multipliers[deg] = 1.0 if j == 0 else sign_binom * c_base / c_n(dim, deg)
    return ReproducingKernel(
        spectrum=spectrum,
        dim=dim,
        expansion=ZonalPolynomial(dim, expansion),
        multipliers=multipliers,
    )


def apply_T(g, kernel):
    """Multiplier action of T: scale supported degree blocks, zero the rest."""
    mult = kernel.multipliers
    if isinstance(g, ZonalPolynomial):
        if g.dim.d != kernel.dim.d:
            raise DomainError("dimension mismatch between polynomial and kernel")
        return ZonalPolynomial(g.dim, {k: mult[k] * v for k, v in g.coeffs.items() if k in mult})
    if isinstance(g, S2Polynomial):
        if kernel.dim.d != 2:
            raise DomainError("S2 polynomials require a d=2 kernel")
        return S2Polynomial({n: mult[n] * c for n, c in g.blocks.items() if n in mult})
    raise DomainError(f"unsupported polynomial type {type(g).__name__}")


def apply_T_by_convolution(values, kernel, grid, g_degree=None):
    """Direct quadrature of (1/omega_2) int g(y) H(x.y) dsigma(y) at grid nodes.

    O(grid^2) cross-check of the multiplier route; d = 2 only.
    """
    if kernel.dim.d != 2:
        raise DomainError("grid convolution is implemented for d = 2 only")
    values = np.asarray(values, dtype=float)
    if values.shape != grid.weights.shape:
        raise DomainError("values length does not match grid")
    if g_degree is not None and g_degree + kernel.degree > grid.exactness_degree:
        raise CapacityError(
            f"grid exactness {grid.exactness_degree} < deg(g)+deg(H) = "
            f"{g_degree + kernel.degree}"
        )
    pts = grid.points()
    dots = np.clip(pts @ pts.T, -1.0, 1.0)
    h_values = zonal_synthesis(kernel.expansion.coeffs, kernel.dim.lam, dots.ravel())
    h_values = h_values.reshape(dots.shape)
    return h_values @ (grid.weights * values) / kernel.dim.omega_d


def _coeff_blocks(f):
    if isinstance(f, ZonalPolynomial):
        return {k: np.array([v]) for k, v in f.coeffs.items()}
    return f.blocks


def reproducing_residual(f, kernel):
    """Coefficient-space relative residual ||T f - f||_inf / ||f||_inf."""
    supported = set(kernel.spectrum.degrees)
    blocks = _coeff_blocks(f)
    if not set(blocks).issubset(supported):
        raise SpectrumError(
            f"polynomial spectrum {sorted(blocks)} not contained in kernel "
            f"spectrum {sorted(supported)}"
        )
    tf_blocks = _coeff_blocks(apply_T(f, kernel))
    scale = max((float(np.max(np.abs(c))) for c in blocks.values()), default=0.0)
    if scale == 0.0:
        return 0.0
    worst = 0.0
    for n, c in blocks.items():
        diff = tf_blocks.get(n, np.zeros_like(c)) - c
        worst = max(worst, float(np.max(np.abs(diff))))
    return worst / scale


def convolution_residual(f, kernel, grid=None):
    """Relative sup residual of T f = f along the S^2 convolution route."""
    from .quadrature import s2_product_rule

    if not isinstance(f, S2Polynomial):
        raise DomainError("convolution residual requires an S2Polynomial")
    if grid is None:
        need = f.degree + kernel.degree
        grid = s2_product_rule(need // 2 + 1)
    values = synthesize_s2(f, grid)
    conv = apply_T_by_convolution(values, kernel, grid, g_degree=f.degree)
    scale = float(np.max(np.abs(values)))
    if scale == 0.0:
        return 0.0
    return float(np.max(np.abs(conv - values))) / scale


@dataclass(frozen=True)
class KernelSupNormReport:
    measured: float
    reference: float

    @property
    def ratio(self):
        return self.measured / self.reference


def kernel_sup_norm_report(kernel, grid_size=None):
    """Measured ||H||_inf against the constant-free reference (m+1) n^{d-1-l0}.

    The reference counts the m+1 spectrum terms, each bounded by n^{d-1-l0}.
    """
    spectrum = kernel.spectrum
    dim = kernel.dim
    measured = zonal_sup_norm(kernel.expansion, grid_size=grid_size, dim=dim)
    l0 = ell_zero(dim.d, spectrum.ell)
    reference = (spectrum.m + 1) * max(float(spectrum.n), 1.0) ** (dim.d - 1 - l0)
    return KernelSupNormReport(measured=measured, reference=reference)


def l2_operator_norm_bound(kernel):
    """Exact L^2 -> L^2 operator norm of T: sup over degrees of |multiplier|."""
    return max(abs(v) for v in kernel.multipliers.values())
