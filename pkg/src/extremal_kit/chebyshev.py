"""Chebyshev center and radius (minimum enclosing ball) with convex-hull certificates.

The solver runs a short core-set pass (move the center a step 1/(k+1) toward
the farthest point) and then an exact active-set walk in the spirit of
Fischer, Gaertner and Kutz: the support set is kept affinely independent and
on the boundary of the current ball, the center walks toward the circumcenter
of the support, picks up any point that blocks the walk, and drops the
support point with the most negative affine coefficient once the walk ends.
At termination the center is a convex combination of support points, which
is the optimality certificate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import CertificateError, DomainError, NonConvergenceError
from .geometry import (
    Ball,
    PointSet,
    _check_vector,
    as_pointset,
    distances_to,
    unique_row_indices,
)

DEFAULT_TOL = 1e-9
MAX_COARSE_STEPS = 10**6
MAX_PIVOTS = 200


@dataclass(frozen=True, eq=False)
class ChebyshevResult:
    """Center, radius and support weights of a minimum enclosing ball.

    ``support`` lists ``(index, weight)`` pairs with positive weights summing
    to one; ``center`` equals the weighted sum of the support points and
    every support point lies on the boundary sphere. ``residual`` is the
    largest absolute violation of those identities actually achieved.
    """

    center: np.ndarray
    radius: float
    support: tuple[tuple[int, float], ...]
    residual: float = 0.0

    @property
    def support_indices(self) -> np.ndarray:
        return np.array([i for i, _ in self.support], dtype=int)

    @property
    def weights(self) -> np.ndarray:
        return np.array([w for _, w in self.support], dtype=np.float64)

    def ball(self) -> Ball:
        return Ball(self.center, self.radius)

    def to_dict(self) -> dict:
        return {
            "center": [float(x) for x in self.center],
            "radius": float(self.radius),
            "support": [[int(i), float(w)] for i, w in self.support],
            "residual": float(self.residual),
        }


def _circumcenter(P: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Circumcenter of affinely independent rows of P inside their affine hull.

    Returns the center and its affine coefficients with respect to the rows.
    """
    if P.shape[0] == 1:
        return P[0].copy(), np.ones(1)
    U = P[1:] - P[0]
    G = U @ U.T
    rhs = 0.5 * np.diag(G)
    try:
        mu = np.linalg.solve(G, rhs)
        # one step of iterative refinement
        mu += np.linalg.solve(G, rhs - G @ mu)
    except np.linalg.LinAlgError:
        mu = np.linalg.lstsq(G, rhs, rcond=None)[0]
    lam = np.empty(P.shape[0])
    lam[0] = 1.0 - mu.sum()
    lam[1:] = mu
    return P[0] + U.T @ mu, lam


def _coarse_center(Z: np.ndarray, steps: int) -> np.ndarray:
    c = Z[0].copy()
    for k in range(1, steps + 1):
        diff = Z - c
        i = int(np.argmax(np.einsum("ij,ij->i", diff, diff)))
        c += (Z[i] - c) / (k + 1)
    return c


def _active_set(Z: np.ndarray, c: np.ndarray, scale: float, max_pivots: int):
    """Exact support walk from a feasible start center ``c``."""
    d2 = np.einsum("ij,ij->i", Z - c, Z - c)
    T = [int(np.argmax(d2))]
    drops = 0
    walk_tol = 1e-13 * scale
    while True:
        cc, lam = _circumcenter(Z[T])
        v = cc - c
        vnorm = float(np.linalg.norm(v))
        # d + 1 support points pin the center: whatever is left of the walk
        # is roundoff, and following it would add an affinely dependent point
        if vnorm <= walk_tol or len(T) > Z.shape[1]:
            c = cc
            if lam.min() > 0.0:
                return c, T, lam, drops
            drops += 1
            if drops > max_pivots:
                raise NonConvergenceError(
                    f"active-set budget of {max_pivots} pivots exhausted",
                    best_center=c,
                    best_radius=float(np.sqrt(np.max(np.einsum("ij,ij->i", Z - c, Z - c)))),
                )
            del T[int(np.argmin(lam))]
            continue

        diff = Z - c
        d2 = np.einsum("ij,ij->i", diff, diff)
        r2 = float(np.max(d2[T]))
        denom = 2.0 * ((Z[T[0]] - Z) @ v)
        num = np.maximum(r2 - d2, 0.0)
        blocking = denom > 1e-14 * vnorm * scale
        blocking[T] = False
        s_best, p_best = 1.0, -1
        if np.any(blocking):
            cand = np.flatnonzero(blocking)
            s = num[cand] / denom[cand]
            j = int(np.argmin(s))
            if s[j] < 1.0:
                s_best, p_best = float(s[j]), int(cand[j])
        if p_best < 0:
            c = cc
        else:
            c = c + s_best * v
            T.append(p_best)


def _residuals(X: np.ndarray, center: np.ndarray, radius: float, support) -> dict:
    idx = np.array([i for i, _ in support], dtype=int)
    w = np.array([t for _, t in support], dtype=np.float64)
    dist = np.sqrt(np.einsum("ij,ij->i", X - center, X - center))
    return {
        "weight_min": float(w.min()) if w.size else -1.0,
        "weight_sum": abs(float(w.sum()) - 1.0) if w.size else 1.0,
        "hull": float(np.linalg.norm(center - w @ X[idx])) if w.size else math.inf,
        "sphere": float(np.max(np.abs(dist[idx] - radius))) if w.size else math.inf,
        "enclosing": max(0.0, float(np.max(dist)) - radius),
    }


def min_enclosing_ball(
    A,
    tol: float = DEFAULT_TOL,
    *,
    max_coarse_steps: int = MAX_COARSE_STEPS,
    max_pivots: int = MAX_PIVOTS,
    coarse_eps: float = 0.25,
) -> ChebyshevResult:
    """Unique Chebyshev center and radius of a finite point set.

    All certificate identities hold within ``tol * (1 + radius)``.
    ``max_pivots`` bounds the number of support removals. Raises
    NonConvergenceError when a budget is exhausted.
    """
    if not tol > 0:
        raise DomainError("tol must be positive")
    A = as_pointset(A)
    X = A.points
    first = unique_row_indices(X)
    Y = X[first]
    if Y.shape[0] == 1:
        return ChebyshevResult(Y[0].copy(), 0.0, ((int(first[0]), 1.0),), 0.0)

    origin = Y.mean(axis=0)
    Z = Y - origin
    scale = float(np.max(np.linalg.norm(Z, axis=1)))
    steps = min(max_coarse_steps, math.ceil(1.0 / coarse_eps**2))
    c = _coarse_center(Z, steps)

    for _attempt in range(3):
        c, T, lam, _ = _active_set(Z, c, scale, max_pivots)
        center = c + origin
        radius = float(np.max(distances_to(A, center)))
        support = tuple(sorted((int(first[t]), float(w)) for t, w in zip(T, lam)))
        res = _residuals(X, center, radius, support)
        residual = max(res["weight_sum"], res["hull"], res["sphere"], res["enclosing"])
        if residual <= tol * (1.0 + radius):
            return ChebyshevResult(center, radius, support, residual)
    raise NonConvergenceError(
        f"certificate residual {residual:.3e} above tolerance",
        best_center=center,
        best_radius=radius,
        residual=residual,
    )


def relative_radius(A, c) -> float:
    """sup over x in A of |x - c|."""
    A = as_pointset(A)
    return float(np.max(distances_to(A, _check_vector(A, c))))


def verify_certificate(A, result: ChebyshevResult, tol: float = DEFAULT_TOL) -> bool:
    """Check every ChebyshevResult invariant at tolerance ``tol * (1 + radius)``."""
    A = as_pointset(A)
    c = np.asarray(result.center, dtype=np.float64).ravel()
    if c.shape[0] != A.dim or not result.support:
        return False
    if any(not (0 <= i < A.m) for i, _ in result.support):
        return False
    res = _residuals(A.points, c, result.radius, result.support)
    scaled = tol * (1.0 + result.radius)
    return (
        res["weight_min"] > 0.0
        and res["weight_sum"] <= tol
        and res["hull"] <= scaled
        and res["sphere"] <= scaled
        and res["enclosing"] <= scaled
    )


def annulus_indices(A, result: ChebyshevResult, eps: float) -> np.ndarray:
    """Indices of the points farther than ``radius - eps`` from the center."""
    A = as_pointset(A)
    r = result.radius
    if not (0.0 < eps < r):
        raise DomainError(f"eps must lie in (0, {r}), got {eps}")
    idx = np.flatnonzero(distances_to(A, result.center) > r - eps)
    if idx.size == 0:
        raise CertificateError("annulus is empty; the certificate does not match the set")
    return idx


def annulus_reduction(A, result: ChebyshevResult, eps: float) -> PointSet:
    """A minus the closed ball B(center, radius - eps).

    The Chebyshev center and radius of the returned subset equal those of A.
    """
    A = as_pointset(A)
    return A.subset(annulus_indices(A, result, eps))


def sphere_indices(A, center, radius: float, tol: float | None = None) -> np.ndarray:
    """Indices of the points within ``tol`` of the sphere S(center, radius)."""
    if tol is None:
        tol = 1e-7 * (1.0 + radius)
    return np.flatnonzero(np.abs(distances_to(A, center) - radius) <= tol)


def support_identity_residual(A, result: ChebyshevResult) -> float:
    """max_j |sum_i t_i |y_i - y_j|^2 - 2 r^2| over the support points y_j."""
    A = as_pointset(A)
    Y = A.points[result.support_indices]
    w = result.weights
    diff = Y[:, None, :] - Y[None, :, :]
    sq = np.einsum("ijk,ijk->ij", diff, diff)
    return float(np.max(np.abs(w @ sq - 2.0 * result.radius**2)))
