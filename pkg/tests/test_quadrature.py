import math

import numpy as np
import pytest

from lacsphere.errors import DomainError
from lacsphere.polyspace import ZonalPolynomial
from lacsphere.quadrature import (
    gauss_jacobi_rule,
    s2_lp_norm,
    s2_product_rule,
    zonal_lp_norm,
    zonal_sup_norm,
)
from lacsphere.specfun import DimensionParams, normalized_eval


def moment_exact(k, alpha):
    """Analytic value of integral t^k (1-t^2)^alpha dt over [-1, 1]."""
    if k % 2 == 1:
        return 0.0
    return math.exp(
        math.lgamma((k + 1) / 2.0)
        + math.lgamma(alpha + 1.0)
        - math.lgamma((k + 1) / 2.0 + alpha + 1.0)
    )


def test_rule_tiny_cases():
    r = gauss_jacobi_rule(0.0, 1)
    assert r.nodes == pytest.approx([0.0], abs=1e-15)
    assert r.weights == pytest.approx([2.0], rel=1e-15)
    r2 = gauss_jacobi_rule(0.0, 2)
    assert r2.integrate(lambda t: t**2) == pytest.approx(2.0 / 3.0, rel=1e-14)
    assert r2.exactness_degree == 3
    r3 = gauss_jacobi_rule(0.5, 3)
    assert np.sum(r3.weights) == pytest.approx(math.pi / 2, rel=1e-14)


def test_rule_structure():
    for alpha in (0.0, 0.5, 1.5):
        for n in (5, 32, 101):
            r = gauss_jacobi_rule(alpha, n)
            assert np.all(np.diff(r.nodes) > 0)
            assert np.all(r.weights > 0)
            assert np.allclose(r.nodes, -r.nodes[::-1], atol=1e-14)


def test_rule_exactness_moments():
    rng = np.random.default_rng(11)
    for alpha in (0.0, 0.5, 1.0, 1.5):
        for n in (4, 16, 64, 256):
            r = gauss_jacobi_rule(alpha, n)
            for k in rng.integers(0, 2 * n, size=8):
                got = r.integrate(lambda t, k=k: t ** int(k))
                want = moment_exact(int(k), alpha)
                assert abs(got - want) <= 1e-12 * max(abs(want), 1.0)


def test_large_rule_against_legendre():
    r = gauss_jacobi_rule(0.0, 2048)
    x, w = np.polynomial.legendre.leggauss(2048)
    assert np.max(np.abs(r.nodes - x)) < 1e-13
    assert np.max(np.abs(r.weights - w)) < 5e-13


def test_zonal_lp_norm_constant():
    dim = DimensionParams(2)
    f = ZonalPolynomial(dim, {0: 1.0})
    for p in (0.5, 1.0, 2.0, 4.0):
        assert zonal_lp_norm(f, p) == pytest.approx((4 * math.pi) ** (1.0 / p), rel=1e-12)


def test_zonal_l2_oracle():
    dim = DimensionParams(2)
    assert zonal_lp_norm(ZonalPolynomial(dim, {3: 1.0}), 2.0) == pytest.approx(
        math.sqrt(4 * math.pi / 7), rel=1e-13
    )
    assert zonal_lp_norm(ZonalPolynomial(dim, {1: 1.0}), 2.0) == pytest.approx(
        math.sqrt(4 * math.pi / 3), rel=1e-13
    )


def test_zonal_l1_oracle():
    # ||t|| in L^1(S^2): 2*pi * integral |t| dt = 2*pi
    dim = DimensionParams(2)
    v = zonal_lp_norm(ZonalPolynomial(dim, {1: 1.0}), 1.0)
    assert v == pytest.approx(2 * math.pi, rel=1e-11)


def test_zonal_lp_norm_fractional_p_converges():
    dim = DimensionParams(3)
    f = ZonalPolynomial(dim, {16: 1.0, 19: -0.5})
    v1 = zonal_lp_norm(f, 4.0 / 3.0, tol=1e-10)
    v2 = zonal_lp_norm(f, 4.0 / 3.0, tol=1e-12)
    assert v1 == pytest.approx(v2, rel=1e-9)


def test_zonal_lp_norm_rejects_bad_p():
    dim = DimensionParams(2)
    f = ZonalPolynomial(dim, {1: 1.0})
    with pytest.raises(DomainError):
        zonal_lp_norm(f, 0.0)
    with pytest.raises(DomainError):
        zonal_lp_norm(f, math.inf)


def test_zonal_sup_norm():
    dim = DimensionParams(2)
    assert zonal_sup_norm(ZonalPolynomial(dim, {0: 1.0, 2: -1.0})) == pytest.approx(
        1.5, rel=1e-12
    )
    for n in (1, 9, 64):
        assert zonal_sup_norm(ZonalPolynomial(dim, {n: 1.0})) == pytest.approx(1.0, rel=1e-12)


def test_s2_grid_cross_route():
    # degree-10 zonal product integrates the same along both routes
    dim = DimensionParams(2)
    grid = s2_product_rule(11)
    theta_vals = normalized_eval(dim, 10, grid.polar.nodes)
    values = np.repeat(theta_vals, len(grid.azimuths)) ** 2
    via_grid = float(np.dot(grid.weights, values))
    f = ZonalPolynomial(dim, {10: 1.0})
    via_1d = zonal_lp_norm(f, 2.0) ** 2
    assert via_grid == pytest.approx(via_1d, rel=1e-10)


def test_s2_lp_norm_zonal_sample():
    dim = DimensionParams(2)
    grid = s2_product_rule(8)
    theta_vals = normalized_eval(dim, 3, grid.polar.nodes)
    values = np.repeat(theta_vals, len(grid.azimuths))
    assert s2_lp_norm(values, 2.0, grid) == pytest.approx(
        math.sqrt(4 * math.pi / 7), rel=1e-12
    )
    assert s2_lp_norm(np.ones(len(grid.weights)), math.inf, grid) == 1.0
