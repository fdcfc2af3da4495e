"""lacsphere: numerics for lacunary spherical polynomials.

Gegenbauer evaluation, Gauss-Jacobi quadrature on the sphere, the reproducing
zonal operator for lacunary degree spectra, Nikolskii-ratio measurements, and
an extremal-ratio search.
"""

__version__ = "0.1.0"

from .errors import (
    CapacityError,
    ConvergenceError,
    DegreeOverflowError,
    DomainError,
    LacsphereError,
    SpectrumError,
)
from .polyspace import (
    LacunarySpectrum,
    NikolskiiReport,
    S2Polynomial,
    ZonalPolynomial,
    conjugate_exponent,
    ell_zero,
    nikolskii_ratio,
    polynomial_from_json,
    random_lacunary_s2,
    random_lacunary_zonal,
    s2_norm,
    synthesize_s2,
    theorem_bound,
    validate_spectrum,
)
from .quadrature import (
    QuadratureRule,
    SphereGridS2,
    gauss_jacobi_rule,
    s2_lp_norm,
    s2_product_rule,
    zonal_lp_norm,
    zonal_sup_norm,
)
from .reproducing import (
    ReproducingKernel,
    apply_T,
    apply_T_by_convolution,
    build_kernel,
    c_n,
    convolution_residual,
    kernel_sup_norm_report,
    l2_operator_norm_bound,
    reproducing_residual,
)
from .search import (
    ExponentFit,
    ExtremalReport,
    SweepResult,
    exponent_fit,
    maximize_ratio,
    packed_spectrum,
    sweep,
)
from .specfun import (
    DifferenceSpec,
    DimensionParams,
    bound_envelope,
    difference_eval,
    empirical_bound_constant,
    flat_envelope,
    gegenbauer_at_one,
    gegenbauer_eval,
    normalized_eval,
    surface_area,
    zonal_synthesis,
)
