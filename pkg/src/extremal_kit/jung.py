"""Jung constants, extremality classification and simplex radius bounds."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .chebyshev import DEFAULT_TOL, ChebyshevResult, min_enclosing_ball
from .errors import DomainError
from .geometry import PointSet, as_pointset, diameter, unique_row_indices

HILBERT_BOUND = 1.0 / math.sqrt(2.0)
NEAR_EXTREMAL_FRACTION = 0.98

EXTREMAL = "extremal-within-tol"
NEAR_EXTREMAL = "near-extremal"
NON_EXTREMAL = "non-extremal"


def jung_constant(n: int) -> float:
    """Jung constant of n-dimensional Euclidean space, sqrt(n / (2(n+1)))."""
    if int(n) != n or n < 1:
        raise DomainError(f"Jung constant needs a positive integer dimension, got {n}")
    return math.sqrt(n / (2.0 * (n + 1)))


@dataclass(frozen=True)
class ExtremalityReport:
    diameter: float
    radius: float
    ratio: float
    finite_dim_bound: float
    hilbert_bound: float
    classification: str
    affine_dim_bound: int
    witness_lower_bound: float | None = None
    certificate_residual: float = 0.0

    def to_dict(self) -> dict:
        return asdict(self)


def classify(ratio: float, finite_dim_bound: float, tol: float = 1e-6) -> str:
    """Extremality class of a radius/diameter ratio.

    The near-extremal band (ratio within 2% of 1/sqrt(2)) is checked first;
    a finite set can never reach 1/sqrt(2) itself.
    """
    if ratio >= NEAR_EXTREMAL_FRACTION * HILBERT_BOUND:
        return NEAR_EXTREMAL
    if ratio >= (1.0 - tol) * finite_dim_bound:
        return EXTREMAL
    return NON_EXTREMAL


def extremality_report(
    A,
    tol: float = 1e-6,
    *,
    result: ChebyshevResult | None = None,
    solver_tol: float = DEFAULT_TOL,
) -> ExtremalityReport:
    """Diameter, Chebyshev radius, their ratio and the Jung bounds for A."""
    A = as_pointset(A)
    if len(unique_row_indices(A.points)) < 2:
        raise DomainError("extremality needs at least two distinct points")
    if result is None:
        result = min_enclosing_ball(A, solver_tol)
    d = diameter(A)
    ratio = result.radius / d
    q = min(A.dim, A.m - 1)
    fdb = jung_constant(q)
    return ExtremalityReport(
        diameter=d,
        radius=result.radius,
        ratio=ratio,
        finite_dim_bound=fdb,
        hilbert_bound=HILBERT_BOUND,
        classification=classify(ratio, fdb, tol),
        affine_dim_bound=q,
        certificate_residual=result.residual,
    )


def regular_simplex(n: int, edge: float = 1.0) -> PointSet:
    """Regular n-simplex with the given edge, as (edge/sqrt 2) e_1..e_{n+1} in R^{n+1}."""
    if int(n) != n or n < 1:
        raise DomainError("simplex dimension must be a positive integer")
    if not edge > 0:
        raise DomainError("edge must be positive")
    return PointSet((edge / math.sqrt(2.0)) * np.eye(n + 1))


def simplex_chebyshev_bound(p: int, min_edge: float) -> float:
    """Lower bound on the Chebyshev radius of a p-simplex whose edges are all >= min_edge."""
    if p < 1:
        raise DomainError("p must be a positive integer")
    if min_edge < 0:
        raise DomainError("min_edge must be nonnegative")
    return min_edge * math.sqrt(p / (2.0 * (p + 1)))


def eq9_bound(p: int, n: int) -> float:
    """sqrt((2 - 4/sqrt(n)) p / (2(p+1))): radius bound for a p-simplex with squared edges >= 2 - 4/sqrt(n)."""
    if p < 1:
        raise DomainError("p must be a positive integer")
    if n < 4:
        raise DomainError("n must be at least 4 for the bound to be meaningful")
    factor = max(2.0 - 4.0 / math.sqrt(n), 0.0)
    return math.sqrt(factor * p / (2.0 * (p + 1)))
