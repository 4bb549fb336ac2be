"""Exact orbifold Riemann-Roch for terminal threefolds with K = 0 and
certified birationality bounds for |K + mL + T|."""

__version__ = "0.1.0"

from .basket import (  # noqa: E402
    ADMISSIBLE_INDICES, Basket, BasketError, OrbifoldPoint, cartier_index, chi_of,
    enumerate_baskets, format_basket, parse_basket, validate_point,
)
from .certify import (  # noqa: E402
    BoundCertificate, CertificationError, birational_from, case_analysis, global_bound,
    mu0_upper, non_pencil_certified, rho0_bound, verify_certificate, zeta_lower,
)
from .reid import (  # noqa: E402
    FREE, Fixed, MarginForm, Numerics, averaging_floor, contribution, h0_exact,
    h0_lower_bound, min_contribution, periodic_contribution_sum, shift_set_sum, table_a,
)
from .wps import (  # noqa: E402
    WeightedVariety, cross_check_reid, degree_L3, fit_invariants, hilbert_coeffs, parse_variety,
)
