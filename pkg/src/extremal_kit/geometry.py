"""Point sets, balls and Euclidean distance kernels."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError, DomainError

SQRT2 = float(np.sqrt(2.0))


@dataclass(frozen=True, eq=False)
class PointSet:
    """A non-empty ordered collection of points in R^d.

    ``points`` is stored as a read-only float64 array of shape ``(m, dim)``.
    Duplicate points are allowed; labels, if given, must be unique.
    """

    points: np.ndarray
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        pts = np.array(self.points, dtype=np.float64, copy=True)
        if pts.ndim == 1:
            pts = pts.reshape(1, -1) if pts.size else pts.reshape(0, 0)
        if pts.ndim != 2:
            raise DomainError(f"points must be a 2-d array, got shape {pts.shape}")
        if pts.shape[0] == 0:
            raise DomainError("a point set needs at least one point")
        if pts.shape[1] == 0:
            raise DomainError("points need at least one coordinate")
        if not np.all(np.isfinite(pts)):
            raise DomainError("all coordinates must be finite")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)
        if self.labels is not None:
            labels = tuple(str(s) for s in self.labels)
            if len(labels) != pts.shape[0]:
                raise DomainError("labels must match the number of points")
            if len(set(labels)) != len(labels):
                raise DomainError("labels must be unique")
            object.__setattr__(self, "labels", labels)

    @property
    def m(self) -> int:
        return self.points.shape[0]

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    def __len__(self):
        return self.m

    def subset(self, indices) -> "PointSet":
        idx = np.asarray(indices, dtype=int)
        labels = None if self.labels is None else [self.labels[i] for i in idx]
        return PointSet(self.points[idx], labels)

    def scaled(self, s: float) -> "PointSet":
        return PointSet(self.points * s, self.labels)

    def padded(self, dim: int) -> "PointSet":
        """Zero-pad coordinates up to ``dim``."""
        if dim < self.dim:
            raise DimensionError(f"cannot pad {self.dim}-d points down to {dim}")
        pts = np.zeros((self.m, dim))
        pts[:, : self.dim] = self.points
        return PointSet(pts, self.labels)


@dataclass(frozen=True, eq=False)
class Ball:
    """Closed ball B(center, radius)."""

    center: np.ndarray
    radius: float
    # sphere membership tolerance is 1e-7 * (1 + radius) unless overridden
    sphere_tol: float | None = field(default=None)

    def __post_init__(self):
        c = np.array(self.center, dtype=np.float64, copy=True).ravel()
        if not np.all(np.isfinite(c)):
            raise DomainError("ball center must be finite")
        if not (self.radius >= 0):
            raise DomainError("ball radius must be nonnegative")
        c.setflags(write=False)
        object.__setattr__(self, "center", c)
        object.__setattr__(self, "radius", float(self.radius))

    def contains(self, x, tol: float = 0.0) -> bool:
        return bool(np.linalg.norm(np.asarray(x) - self.center) <= self.radius + tol)

    def on_sphere(self, x) -> bool:
        tol = self.sphere_tol if self.sphere_tol is not None else 1e-7 * (1 + self.radius)
        return bool(abs(np.linalg.norm(np.asarray(x) - self.center) - self.radius) <= tol)


def unique_row_indices(X: np.ndarray) -> np.ndarray:
    """Indices of the first occurrence of every distinct row, in order."""
    seen = {}
    for i, row in enumerate(np.asarray(X, dtype=np.float64) + 0.0):
        seen.setdefault(row.tobytes(), i)
    return np.array(sorted(seen.values()), dtype=int)


def as_pointset(A) -> PointSet:
    if isinstance(A, PointSet):
        return A
    return PointSet(np.atleast_2d(np.asarray(A, dtype=np.float64)))


def _check_vector(A: PointSet, c) -> np.ndarray:
    c = np.asarray(c, dtype=np.float64).ravel()
    if c.shape[0] != A.dim:
        raise DimensionError(f"vector has dimension {c.shape[0]}, point set has {A.dim}")
    return c


def _row_distances(X: np.ndarray, i: int) -> np.ndarray:
    diff = X - X[i]
    return np.sqrt(np.sum(diff * diff, axis=1))


def distance_matrix(A) -> np.ndarray:
    """Symmetric matrix of pairwise Euclidean distances with a zero diagonal."""
    X = as_pointset(A).points
    # one kernel for every row keeps the matrix exactly symmetric
    return np.stack([_row_distances(X, i) for i in range(X.shape[0])])


def diameter(A) -> float:
    """Largest pairwise distance, by an exact O(m^2 d) scan."""
    X = as_pointset(A).points
    return max(float(np.max(_row_distances(X, i))) for i in range(X.shape[0]))


def distances_to(A, c) -> np.ndarray:
    A = as_pointset(A)
    diff = A.points - _check_vector(A, c)
    return np.sqrt(np.einsum("ij,ij->i", diff, diff))


def farthest_from(A, c) -> tuple[int, float]:
    """Index and distance of the point of A farthest from ``c`` (lowest index on ties)."""
    d = distances_to(A, c)
    i = int(np.argmax(d))
    return i, float(d[i])


def normalize_diameter(A, target: float = SQRT2) -> tuple[PointSet, float]:
    """Scale A so that its diameter equals ``target``; returns the set and the factor."""
    A = as_pointset(A)
    d = diameter(A)
    if d <= 0:
        raise DomainError("cannot normalize a set of diameter 0")
    s = target / d
    return A.scaled(s), s
