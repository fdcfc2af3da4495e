"""Zonal polynomials, lacunary spectra, real S^2 harmonics, and Nikolskii bounds.

A zonal polynomial is stored as a finite map degree -> coefficient over the
normalized Gegenbauer basis, f(x) = sum_k a_k R_k(x.e) for a fixed pole e.
General (non-zonal) polynomials are supported on S^2 only, as blocks of
coefficients over a real orthonormal spherical-harmonic basis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import CapacityError, DomainError, SpectrumError
from .quadrature import (
    SphereGridS2,
    s2_lp_norm,
    s2_product_rule,
    zonal_lp_norm,
    zonal_sup_norm,
)
from .specfun import DimensionParams, zonal_synthesis

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class ZonalPolynomial:
    """f(x) = sum_k a_k R_k(x.e); explicit zeros are dropped on construction."""

    dim: DimensionParams
    coeffs: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {int(k): float(v) for k, v in sorted(self.coeffs.items()) if v != 0.0}
        if any(k < 0 for k in clean):
            raise DomainError("degrees must be nonnegative")
        object.__setattr__(self, "coeffs", clean)

    @property
    def degree(self):
        return max(self.coeffs, default=0)

    def is_zero(self):
        return not self.coeffs

    def evaluate(self, t):
        return zonal_synthesis(self.coeffs, self.dim.lam, t)

    def scaled(self, c):
        return ZonalPolynomial(self.dim, {k: c * v for k, v in self.coeffs.items()})

    def to_json(self):
        return {
            "v": SCHEMA_VERSION,
            "dim": self.dim.d,
            "kind": "zonal",
            "coeffs": [[k, v] for k, v in self.coeffs.items()],
        }


@dataclass(frozen=True)
class S2Polynomial:
    """Degree blocks of coefficients over a real orthonormal basis of H_n^2."""

    blocks: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for n, c in sorted(self.blocks.items()):
            c = np.asarray(c, dtype=float)
            if c.shape != (2 * int(n) + 1,):
                raise DomainError(f"block at degree {n} must have length {2 * int(n) + 1}")
            if np.any(c != 0.0):
                clean[int(n)] = c
        object.__setattr__(self, "blocks", clean)

    @property
    def dim(self):
        return DimensionParams(2)

    @property
    def degree(self):
        return max(self.blocks, default=0)

    def is_zero(self):
        return not self.blocks

    def l2_norm(self):
        # orthonormal basis: the L^2(S^2) norm is the Euclidean coefficient norm
        return math.sqrt(sum(float(np.dot(c, c)) for c in self.blocks.values()))

    def scaled(self, c):
        return S2Polynomial({n: c * b for n, b in self.blocks.items()})

    def to_json(self):
        return {
            "v": SCHEMA_VERSION,
            "dim": 2,
            "kind": "s2",
            "coeffs": [[n, *map(float, c)] for n, c in self.blocks.items()],
        }


def polynomial_from_json(obj):
    if obj.get("v") != SCHEMA_VERSION:
        raise DomainError(f"unsupported schema version {obj.get('v')}")
    if obj["kind"] == "zonal":
        return ZonalPolynomial(DimensionParams(obj["dim"]), {k: v for k, v in obj["coeffs"]})
    if obj["kind"] == "s2":
        return S2Polynomial({row[0]: np.array(row[1:]) for row in obj["coeffs"]})
    raise DomainError(f"unknown polynomial kind {obj['kind']!r}")


@dataclass(frozen=True)
class LacunarySpectrum:
    """Strictly increasing degrees n_0 < ... < n_m with gaps >= 2*ell + 1."""

    ell: int
    degrees: tuple

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(int(n) for n in self.degrees))

    @property
    def m(self):
        return len(self.degrees) - 1

    @property
    def n(self):
        return self.degrees[-1]


def validate_spectrum(degrees, ell):
    """Check the lacunary gap condition and return the certified spectrum."""
    if ell < 1:
        raise DomainError(f"ell must be >= 1, got {ell}")
    if not degrees:
        raise SpectrumError("degree list must be nonempty")
    degrees = [int(n) for n in degrees]
    if any(n < 0 for n in degrees):
        raise SpectrumError("degrees must be nonnegative")
    gap = 2 * ell + 1
    for j in range(1, len(degrees)):
        got = degrees[j] - degrees[j - 1]
        if got <= 0:
            raise SpectrumError(f"degrees must be strictly increasing at index {j}")
        if got < gap:
            raise SpectrumError(
                f"gap violation at j={j}: n_{j} - n_{j - 1} = {got} < {gap}"
            )
    return LacunarySpectrum(ell=ell, degrees=tuple(degrees))


def random_lacunary_zonal(spectrum, dim, seed, distribution="signs", coefficients=None):
    """Zonal polynomial supported exactly on the spectrum, deterministic in seed."""
    if coefficients is not None or distribution == "given":
        if coefficients is None or len(coefficients) != len(spectrum.degrees):
            raise DomainError("given coefficients must match the spectrum length")
        values = [float(c) for c in coefficients]
    else:
        rng = np.random.default_rng(seed)
        if distribution == "signs":
            values = list(rng.choice([-1.0, 1.0], size=len(spectrum.degrees)))
        elif distribution == "gaussian":
            values = list(rng.standard_normal(len(spectrum.degrees)))
        else:
            raise DomainError(f"unknown distribution {distribution!r}")
    return ZonalPolynomial(dim, dict(zip(spectrum.degrees, values)))


def random_lacunary_s2(spectrum, seed):
    """S^2 polynomial with isotropic Gaussian blocks on the spectrum degrees."""
    rng = np.random.default_rng(seed)
    return S2Polynomial({n: rng.standard_normal(2 * n + 1) for n in spectrum.degrees})


def _normalized_assoc_legendre(nmax, t):
    """Fully normalized associated Legendre values Phat[n][m] at t = cos(theta).

    Normalization: int_{S^2} (Phat_n^m(cos theta) trig(m phi) sqrt(2))^2 dsigma = 1,
    with Phat_0^0 = 1/sqrt(4 pi).  No Condon-Shortley sign.
    Returns array of shape (nmax+1, nmax+1, len(t)); entries with m > n are 0.
    """
    t = np.asarray(t, dtype=float)
    s = np.sqrt(np.maximum(0.0, 1.0 - t**2))
    out = np.zeros((nmax + 1, nmax + 1, len(t)))
    out[0, 0] = 1.0 / math.sqrt(4.0 * math.pi)
    for m in range(1, nmax + 1):
        out[m, m] = s * math.sqrt((2.0 * m + 1.0) / (2.0 * m)) * out[m - 1, m - 1]
    for m in range(nmax):
        out[m + 1, m] = math.sqrt(2.0 * m + 3.0) * t * out[m, m]
    for m in range(nmax + 1):
        for n in range(m + 2, nmax + 1):
            a = math.sqrt((4.0 * n**2 - 1.0) / (n**2 - m**2))
            b = math.sqrt(((n - 1.0) ** 2 - m**2) / (4.0 * (n - 1.0) ** 2 - 1.0))
            out[n, m] = a * (t * out[n - 1, m] - b * out[n - 2, m])
    return out


def s2_basis_block(n, grid, legendre=None):
    """Values of the 2n+1 orthonormal basis functions of H_n^2 on the grid.

    Returns shape (2n+1, L*M); row index i corresponds to signed order i - n
    (negative orders carry sin, positive carry cos, zero is zonal).
    """
    if legendre is None:
        legendre = _normalized_assoc_legendre(n, grid.cos_theta)
    L, M = grid.n_polar, grid.n_azimuth
    rows = np.empty((2 * n + 1, L * M))
    phi = grid.azimuths
    for m_signed in range(-n, n + 1):
        m = abs(m_signed)
        radial = legendre[n, m][:, None]
        if m_signed == 0:
            ang = np.ones_like(phi)[None, :]
            block = radial * ang
        else:
            trig = np.sin(m * phi) if m_signed < 0 else np.cos(m * phi)
            block = math.sqrt(2.0) * radial * trig[None, :]
        rows[m_signed + n] = block.ravel()
    return rows


def synthesize_s2(f, grid):
    """Pointwise values of an S2Polynomial on the product grid."""
    if f.degree > grid.exactness_degree:
        raise CapacityError(
            f"grid exactness {grid.exactness_degree} < polynomial degree {f.degree}"
        )
    values = np.zeros(grid.n_polar * grid.n_azimuth)
    if f.is_zero():
        return values
    legendre = _normalized_assoc_legendre(f.degree, grid.cos_theta)
    for n, c in f.blocks.items():
        values += c @ s2_basis_block(n, grid, legendre)
    return values


def grid_for_degree(deg, p):
    """Product grid sized for an L^p norm of a degree-deg polynomial on S^2."""
    if p == math.inf:
        L = 8 * deg + 64
    elif p == int(p) and int(p) % 2 == 0 and p > 0:
        L = max(int(p) * deg // 2 + 1, deg + 1)
    else:
        L = 4 * deg + 64
    return s2_product_rule(L)


def s2_norm(f, p, grid=None):
    """L^p quasi-norm of an S2Polynomial via grid synthesis."""
    if grid is None:
        grid = grid_for_degree(f.degree, p)
    return s2_lp_norm(synthesize_s2(f, grid), p, grid)


def conjugate_exponent(p):
    """p' with 1/p + 1/p' = 1, for p in [1, inf]."""
    if p < 1:
        raise DomainError(f"conjugate exponent requires p >= 1, got {p}")
    if p == 1:
        return math.inf
    if p == math.inf:
        return 1.0
    return p / (p - 1.0)


def _norm(f, p, tol=1e-10):
    if isinstance(f, ZonalPolynomial):
        if p == math.inf:
            return zonal_sup_norm(f)
        return zonal_lp_norm(f, p, f.dim, tol=tol)
    return s2_norm(f, p)


def nikolskii_ratio(f, p, q, tol=1e-10):
    """Measured ||f||_q / ||f||_p for 0 < p < q <= inf; scale invariant."""
    if not (0 < p < q <= math.inf):
        raise DomainError(f"need 0 < p < q <= inf, got p={p}, q={q}")
    if f.is_zero():
        raise DomainError("the zero polynomial has no Nikolskii ratio")
    return _norm(f, q, tol) / _norm(f, p, tol)


def ell_zero(d, ell):
    """The exponent improvement min(ell, (d-1)/2); may be a half-integer."""
    return min(float(ell), (d - 1) / 2.0)


@dataclass(frozen=True)
class BoundTriple:
    theorem: float
    coarse: float
    classical: float
    warnings: tuple = ()


def hypothesis_warnings(p, q, n=None, m=None, ell=None):
    """Exponent-pair (and optional m <= n/ell) checks, reported as warnings."""
    warnings = []
    case_i = 0 < p <= 1 and p <= q
    case_ii = 1 <= p <= 2 and p <= q <= conjugate_exponent(max(p, 1))
    if not (case_i or case_ii):
        warnings.append(
            f"exponent pair (p={p}, q={q}) outside the hypotheses "
            "(need 0<p<=1, p<=q, or 1<=p<=2, p<=q<=p')"
        )
    if n is not None and m is not None and ell is not None and m > n / ell:
        warnings.append(f"standing assumption m <= n/ell violated: m={m}, n={n}, ell={ell}")
    return tuple(warnings)


def theorem_bound(d, n, m, ell, p, q):
    """Constant-free bound values: improved, coarse, and classical Nikolskii."""
    if not (0 < p <= q <= math.inf):
        raise DomainError(f"need 0 < p <= q <= inf, got p={p}, q={q}")
    e = 1.0 / p - (0.0 if q == math.inf else 1.0 / q)
    l0 = ell_zero(d, ell)
    base = max(float(n), 1.0)
    return BoundTriple(
        theorem=(base ** (d - 1 - l0) * m) ** e,
        coarse=base ** ((d - l0) * e),
        classical=base ** (d * e),
        warnings=hypothesis_warnings(p, q, n=n, m=m, ell=ell),
    )


@dataclass(frozen=True)
class NikolskiiReport:
    """One measured ratio next to the three constant-free bound values."""

    d: int
    n: int
    m: int
    ell: int
    p: float
    q: float
    ratio: float

    @property
    def l0(self):
        return ell_zero(self.d, self.ell)

    @property
    def p_conj(self):
        return conjugate_exponent(self.p) if self.p >= 1 else None

    @property
    def bounds(self):
        return theorem_bound(self.d, self.n, self.m, self.ell, self.p, self.q)

    @property
    def theorem_bound(self):
        return self.bounds.theorem

    @property
    def coarse_bound(self):
        return self.bounds.coarse

    @property
    def classical_bound(self):
        return self.bounds.classical
