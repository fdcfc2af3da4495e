import math

import numpy as np
import pytest

from lacsphere.errors import SpectrumError
from lacsphere.polyspace import (
    ZonalPolynomial,
    random_lacunary_s2,
    random_lacunary_zonal,
    validate_spectrum,
)
from lacsphere.quadrature import zonal_lp_norm
from lacsphere.reproducing import (
    apply_T,
    build_kernel,
    c_n,
    convolution_residual,
    kernel_sup_norm_report,
    l2_operator_norm_bound,
    reproducing_residual,
)
from lacsphere.specfun import DimensionParams


def test_c_n_values():
    d2 = DimensionParams(2)
    for n in (0, 1, 5, 40):
        assert c_n(d2, n) == pytest.approx(2 * n + 1, rel=1e-14)
    # pinned by the reproducing identity below: (1+1)/1 * C_1^1(1) = 4
    assert c_n(DimensionParams(3), 1) == pytest.approx(4.0, rel=1e-14)


def test_build_kernel_single_term():
    dim = DimensionParams(2)
    k = build_kernel(validate_spectrum([5], 1), dim)
    assert k.multipliers[5] == 1.0
    assert k.multipliers[7] == pytest.approx(-11.0 / 15.0, rel=1e-14)
    # H = c_5 (R_5 - R_7)
    assert k.expansion.coeffs[5] == pytest.approx(11.0, rel=1e-14)
    assert k.expansion.coeffs[7] == pytest.approx(-11.0, rel=1e-14)


def test_kernel_sup_norm_spectrum_zero():
    dim = DimensionParams(2)
    k = build_kernel(validate_spectrum([0], 1), dim)
    rep = kernel_sup_norm_report(k)
    assert rep.measured == pytest.approx(1.5, rel=1e-10)


def test_apply_T_multiplier_action():
    dim = DimensionParams(2)
    k = build_kernel(validate_spectrum([5], 1), dim)
    g = ZonalPolynomial(dim, {7: 2.0})
    out = apply_T(g, k)
    assert out.coeffs[7] == pytest.approx(2.0 * (-11.0 / 15.0), rel=1e-13)
    # degrees outside the multiplier support are annihilated
    assert apply_T(ZonalPolynomial(dim, {3: 1.0}), k).coeffs == {}


def test_reproducing_identity_exact_single():
    dim = DimensionParams(2)
    k = build_kernel(validate_spectrum([5], 1), dim)
    f = ZonalPolynomial(dim, {5: 1.0})
    assert reproducing_residual(f, k) == 0.0


def test_reproducing_identity_random():
    sp = validate_spectrum([0, 3, 6], 1)
    for d in (2, 3, 5):
        dim = DimensionParams(d)
        k = build_kernel(sp, dim)
        f = random_lacunary_zonal(sp, dim, seed=13, distribution="gaussian")
        assert reproducing_residual(f, k) <= 1e-9


def test_reproducing_residual_containment_check():
    dim = DimensionParams(2)
    k = build_kernel(validate_spectrum([0, 3], 1), dim)
    with pytest.raises(SpectrumError):
        reproducing_residual(ZonalPolynomial(dim, {6: 1.0}), k)


def test_convolution_route():
    sp = validate_spectrum([0, 3, 6], 1)
    dim = DimensionParams(2)
    k = build_kernel(sp, dim)
    f = random_lacunary_s2(sp, seed=3)
    assert convolution_residual(f, k) <= 1e-8


def test_multiplier_no_collisions():
    rng = np.random.default_rng(2)
    for _ in range(100):
        ell = int(rng.integers(1, 3))
        gaps = rng.integers(2 * ell + 1, 4 * ell + 3, size=4)
        degrees = np.concatenate(([int(rng.integers(0, 5))], )).tolist()
        for g in gaps:
            degrees.append(degrees[-1] + int(g))
        sp = validate_spectrum(degrees, ell)
        k = build_kernel(sp, DimensionParams(int(rng.choice([2, 3, 4, 5]))))
        # one multiplier per shifted degree, exactly 1 on the spectrum
        for nk in sp.degrees:
            assert k.multipliers[nk] == 1.0
        assert len(k.multipliers) == len(sp.degrees) * (ell + 1)


def test_kernel_sup_norm_sweep_spread():
    dim = DimensionParams(3)
    ratios = []
    for n in (4, 8, 16, 32, 64, 128, 256):
        k = build_kernel(validate_spectrum([n], 1), dim)
        ratios.append(kernel_sup_norm_report(k).ratio)
    assert max(ratios) / min(ratios) <= 5.0


def test_l2_operator_norm():
    sp = validate_spectrum([0, 4, 8], 1)
    dim = DimensionParams(3)
    k = build_kernel(sp, dim)
    bound = l2_operator_norm_bound(k)
    assert bound <= 2.0  # 2^ell
    g = ZonalPolynomial(dim, {0: 0.7, 4: -1.0, 6: 0.4, 8: 0.2, 10: -0.3})
    tg = apply_T(g, k)
    lhs = zonal_lp_norm(tg, 2.0) if tg.coeffs else 0.0
    rhs = bound * zonal_lp_norm(g, 2.0)
    assert lhs <= rhs * (1 + 1e-10)
