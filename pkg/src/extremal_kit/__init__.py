"""Computational tools for extremal sets in Hilbert space.

Chebyshev centers with convex-hull certificates, Jung-bound extremality,
long-edge simplex extraction and covering/partition profiles on finite
truncations.
"""

__version__ = "0.1.0"

from .chebyshev import (  # noqa: E402
    ChebyshevResult,
    annulus_reduction,
    min_enclosing_ball,
    relative_radius,
    verify_certificate,
)
from .errors import (  # noqa: E402
    CertificateError,
    DimensionError,
    DomainError,
    ExtremalKitError,
    NonConvergenceError,
    SizeCapError,
)
from .geometry import Ball, PointSet, diameter, distance_matrix, farthest_from  # noqa: E402
from .jung import (  # noqa: E402
    ExtremalityReport,
    eq9_bound,
    extremality_report,
    jung_constant,
    regular_simplex,
    simplex_chebyshev_bound,
)
from .mnc import covering_radius, mnc_profile, partition_diameter, sphere_slice_mnc  # noqa: E402
from .simplex import (  # noqa: E402
    SimplexCertificate,
    extract_exact,
    extract_greedy,
    extremality_witness,
    verify_simplex,
)

__all__ = [
    "Ball",
    "CertificateError",
    "ChebyshevResult",
    "DimensionError",
    "DomainError",
    "ExtremalKitError",
    "ExtremalityReport",
    "NonConvergenceError",
    "PointSet",
    "SimplexCertificate",
    "SizeCapError",
    "annulus_reduction",
    "covering_radius",
    "diameter",
    "distance_matrix",
    "eq9_bound",
    "extract_exact",
    "extract_greedy",
    "extremality_report",
    "extremality_witness",
    "farthest_from",
    "jung_constant",
    "min_enclosing_ball",
    "mnc_profile",
    "partition_diameter",
    "regular_simplex",
    "relative_radius",
    "simplex_chebyshev_bound",
    "sphere_slice_mnc",
    "verify_certificate",
    "verify_simplex",
]
