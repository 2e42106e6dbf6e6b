"""Finite truncations of the explicit sets and canonical families.

An infinite sequence is represented by its first ``m`` elements, embedded in
the smallest R^d that holds them. Random families use numpy's PCG64 bit
generator seeded explicitly, with Gaussian-normalize sphere sampling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .geometry import PointSet, as_pointset
from .jung import regular_simplex

FAMILIES = (
    "example1",
    "example1-cauchy",
    "example2",
    "orthonormal",
    "scaled-orthonormal",
    "regular-simplex",
    "random-sphere",
)


def example1(m: int) -> PointSet:
    """(1 - 1/n) e_n for n = 1..m in R^m; n = 1 gives the origin."""
    if m < 2:
        raise DomainError("example1 needs m >= 2")
    n = np.arange(1, m + 1)
    return PointSet(np.diag(1.0 - 1.0 / n))


def example1_cauchy(m: int) -> PointSet:
    """x_n = sum_{k<=n} 2^{-k/2} e_k + 2^{-n/2} e_{n+1}, n = 1..m, in R^{m+1}.

    Every x_n is a unit vector and the sequence is Cauchy.
    """
    if m < 1:
        raise DomainError("example1-cauchy needs m >= 1")
    coef = 2.0 ** (-np.arange(1, m + 2) / 2.0)
    X = np.zeros((m, m + 1))
    for n in range(1, m + 1):
        X[n - 1, :n] = coef[:n]
        X[n - 1, n] = coef[n - 1]
    return PointSet(X)


def example2(gamma: float, m: int) -> PointSet:
    """y_n = lam e_1 + beta e_{n+1} with beta = gamma/sqrt 2, lam^2 + beta^2 = 1.

    Unit vectors at mutual distance exactly ``gamma``.
    """
    if not (0.0 < gamma <= math.sqrt(2.0)):
        raise DomainError(f"gamma must lie in (0, sqrt 2], got {gamma}")
    if m < 2:
        raise DomainError("example2 needs m >= 2")
    beta = min(gamma / math.sqrt(2.0), 1.0)
    lam = math.sqrt(max(1.0 - beta * beta, 0.0))
    X = np.zeros((m, m + 1))
    X[:, 0] = lam
    X[np.arange(m), np.arange(1, m + 1)] = beta
    return PointSet(X)


def orthonormal_family(m: int) -> PointSet:
    if m < 1:
        raise DomainError("m must be positive")
    return PointSet(np.eye(m))


def scaled_orthonormal(m: int, s: float) -> PointSet:
    if not s > 0:
        raise DomainError("scale s must be positive")
    return PointSet(s * np.eye(m))


def random_sphere(m: int, d: int, seed: int) -> PointSet:
    """m points uniform on the unit sphere of R^d (PCG64, Gaussian-normalize)."""
    if m < 1 or d < 1:
        raise DomainError("m and d must be positive")
    rng = np.random.Generator(np.random.PCG64(seed))
    while True:
        G = rng.standard_normal((m, d))
        norms = np.linalg.norm(G, axis=1)
        if np.all(norms > 0):
            return PointSet(G / norms[:, None])


def union(*sets) -> PointSet:
    """Concatenate point sets after zero-padding them to a common dimension."""
    if not sets:
        raise DomainError("union needs at least one set")
    sets = [as_pointset(s) for s in sets]
    dim = max(s.dim for s in sets)
    return PointSet(np.vstack([s.padded(dim).points for s in sets]))


@dataclass(frozen=True)
class FamilySpec:
    """A named generator family with its truncation size and parameters.

    Recognised params: ``gamma`` (example2), ``s`` (scaled-orthonormal),
    ``edge`` (regular-simplex, which has m = n + 1 points), ``d`` and
    ``seed`` (random-sphere).
    """

    family_id: str
    m: int
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.family_id not in FAMILIES:
            raise DomainError(f"unknown family {self.family_id!r}; choose from {', '.join(FAMILIES)}")
        if int(self.m) != self.m or self.m < 1:
            raise DomainError("m must be a positive integer")
        if self.family_id == "example2":
            g = self.params.get("gamma")
            if g is None or not (0.0 < g <= math.sqrt(2.0)):
                raise DomainError("example2 requires gamma in (0, sqrt 2]")
        if self.family_id == "scaled-orthonormal" and not self.params.get("s", 1.0) > 0:
            raise DomainError("scaled-orthonormal requires s > 0")

    @property
    def dim(self) -> int:
        return build(self).dim

    def to_dict(self) -> dict:
        return {"family_id": self.family_id, "m": self.m, "params": dict(self.params)}

    @classmethod
    def from_dict(cls, data: dict) -> "FamilySpec":
        try:
            return cls(str(data["family_id"]), int(data["m"]), dict(data.get("params", {})))
        except KeyError as exc:
            raise DomainError(f"family spec is missing {exc}") from None


def build(spec: FamilySpec) -> PointSet:
    p = spec.params
    m = spec.m
    fid = spec.family_id
    if fid == "example1":
        return example1(m)
    if fid == "example1-cauchy":
        return example1_cauchy(m)
    if fid == "example2":
        return example2(float(p["gamma"]), m)
    if fid == "orthonormal":
        return orthonormal_family(m)
    if fid == "scaled-orthonormal":
        return scaled_orthonormal(m, float(p.get("s", 1.0)))
    if fid == "regular-simplex":
        if m < 2:
            raise DomainError("a regular simplex needs m >= 2 vertices")
        return regular_simplex(m - 1, float(p.get("edge", 1.0)))
    return random_sphere(m, int(p.get("d", 3)), int(p.get("seed", 0)))
