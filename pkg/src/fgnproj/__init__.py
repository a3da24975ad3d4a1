"""Projection coefficients, Cholesky triangles and projection norms of fractional Gaussian noise."""
from ._backend import BACKEND
from .autocov import (
    AutocovTable, HurstIndex, RhoDerivativeTable, fbm_covariance, hat_rho, rho, rho_array,
    rho_dH, rho_dH_prefix, rho_prefix,
)
from .bilateral import (
    BilateralCoefficients, DeterminantBundle, bilateral_determinants, d32_derivative_profile,
    d32_second_derivative, d32_second_derivative_limit, full_system, norm_bilateral,
    norm_bilateral_quadratic, q_closed_small, q_cramer, q_ladder, q_recursive, q_solve,
    reduced_system,
)
from .exceptions import (
    CrossCheckError, DegenerateDenominator, DomainError, FGNError, IllConditioned,
    IllConditionedWarning, NoSignChange, NotPositiveDefinite,
)
from .gramians import (
    CholeskyTriangle, GramKind, GramMatrix, SamplePathBatch, SolveResult, TriangleKind,
    build_gram, cholesky, determinant_spd, sample_fgn, solve_spd,
)
from .onesided import (
    GammaLadder, MartingaleCoefficients, OneSidedCoefficients, delta_n, gamma43_closed,
    gamma_ladder, gamma_recursive, gamma_solve, gamma_system, martingale_coeffs,
    norm_one_sided, norm_one_sided_quadratic, predict,
)

__version__ = "0.1.0"
