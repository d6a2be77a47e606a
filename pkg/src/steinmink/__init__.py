"""Steiner-Minkowski tube-volume polynomials of classic convex bodies.

The library computes, for balls, cubes, regular cross-polytopes and regular
simplexes in any dimension: intrinsic volumes and quermassintegrals, the
polynomial M_K(t) = Vol_n(K + t B^n), its size-free renormalized form, the
limiting entire functions reached as the dimension grows, locations of the
polynomial zeros, and an independent Monte Carlo volume oracle.  The
`steinmink` command exposes the same pipelines on the command line.
"""

from ._kernels import backend_name
from .angles import (IntegralValue, QuadratureConfig, QuadratureError,
                     gamma_cross, gamma_simplex, i_cross, i_cross_asymptotic,
                     i_simplex, i_simplex_asymptotic)
from .families import (FamilyInstance, FamilyKind, QuermassVector,
                       external_angle, face_count, face_volume,
                       intrinsic_volumes, shape_factor)
from .limits import (ConvergenceProfile, LimitFunction, LimitTag,
                     convergence_profile, eval_limit, limit_for)
from .mc import (McConfig, McEstimate, ValidationRow, ValidationTable,
                 distance_to_body, estimate_tube_volume, validate_family)
from .polynomials import (ConcavityReport, MinkowskiPolynomial,
                          RenormalizedPolynomial, check_log_concavity,
                          closed_form_renormalized, evaluate,
                          minkowski_polynomial, mu_from_quermass, renormalize,
                          renormalized_polynomial)
from .specfun import jensen_multipliers, unit_ball_volume
from .zeros import (RootConfig, RootFindingError, RootSet, ZeroLocationReport,
                    classify_zeros, find_roots)

__version__ = "0.1.0"

__all__ = [
    "backend_name",
    "IntegralValue", "QuadratureConfig", "QuadratureError",
    "gamma_cross", "gamma_simplex", "i_cross", "i_simplex",
    "i_cross_asymptotic", "i_simplex_asymptotic",
    "FamilyInstance", "FamilyKind", "QuermassVector",
    "external_angle", "face_count", "face_volume", "intrinsic_volumes",
    "shape_factor",
    "ConvergenceProfile", "LimitFunction", "LimitTag",
    "convergence_profile", "eval_limit", "limit_for",
    "McConfig", "McEstimate", "ValidationRow", "ValidationTable",
    "distance_to_body", "estimate_tube_volume", "validate_family",
    "ConcavityReport", "MinkowskiPolynomial", "RenormalizedPolynomial",
    "check_log_concavity", "closed_form_renormalized", "evaluate",
    "minkowski_polynomial", "mu_from_quermass", "renormalize",
    "renormalized_polynomial",
    "jensen_multipliers", "unit_ball_volume",
    "RootConfig", "RootFindingError", "RootSet", "ZeroLocationReport",
    "classify_zeros", "find_roots",
    "__version__",
]
