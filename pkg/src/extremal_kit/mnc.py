"""Covering-radius and partition-diameter profiles of finite point sets.

For a finite set the optimal k-ball cover (centers anywhere) induces a
partition into at most k parts, so both profiles are min-max partition
problems:

    rho(k)   = min over <=k-part partitions of max part Chebyshev radius
    delta(k) = min over <=k-part partitions of max part diameter

They are the finite counterparts of the Hausdorff and Kuratowski measures of
non-compactness and obey rho(k) <= delta(k) <= 2 rho(k). Values reported
here are profile values of truncations, not the measures of infinite sets.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .chebyshev import ChebyshevResult, min_enclosing_ball, sphere_indices
from .errors import DomainError, SizeCapError
from .geometry import PointSet, as_pointset, distance_matrix
from .generators import FAMILIES, FamilySpec, build

EXACT_MAX_M = 14
EXACT_MAX_K = 4
GREEDY_RESTARTS = 8
GREEDY_MAX_ITER = 200
_TIE = 1e-12

EXACT = "exact"
GREEDY = "greedy"
GREEDY_FALLBACK = "greedy-fallback"


@dataclass(frozen=True)
class ProfileEntry:
    k: int
    value: float
    mode: str


@dataclass
class CoveringProfile:
    m: int
    entries: list[ProfileEntry] = field(default_factory=list)
    family: str | None = None

    def values(self) -> dict[int, float]:
        return {e.k: e.value for e in self.entries}


@dataclass
class PartitionProfile:
    m: int
    entries: list[ProfileEntry] = field(default_factory=list)
    family: str | None = None
    empty: bool = False
    indices: tuple[int, ...] = ()

    def values(self) -> dict[int, float]:
        return {e.k: e.value for e in self.entries}


def max_workers() -> int:
    try:
        return max(1, int(os.environ.get("EXTREMAL_KIT_THREADS", "1")))
    except ValueError:
        return 1


def _subset_radius(P: np.ndarray) -> float:
    # Fast path: affinely independent points whose circumcenter lies strictly
    # inside their hull are their own minimal ball.
    if P.shape[0] <= P.shape[1] + 1:
        U = P[1:] - P[0]
        G = U @ U.T
        if np.linalg.matrix_rank(G) == G.shape[0]:
            mu = np.linalg.solve(G, 0.5 * np.diag(G))
            if mu.min() > 0.0 and mu.sum() < 1.0:
                return float(np.linalg.norm(U.T @ mu))
    return min_enclosing_ball(P).radius


class _SubsetCosts:
    """Lazily cached per-subset radius and diameter, keyed by bitmask."""

    def __init__(self, A: PointSet):
        self.X = A.points
        self.D = distance_matrix(A)
        self._rad = {0: 0.0}
        self._diam = {0: 0.0}

    @staticmethod
    def members(mask: int) -> list[int]:
        out = []
        while mask:
            low = mask & -mask
            out.append(low.bit_length() - 1)
            mask ^= low
        return out

    def radius(self, mask: int) -> float:
        r = self._rad.get(mask)
        if r is None:
            idx = self.members(mask)
            r = 0.0 if len(idx) == 1 else _subset_radius(self.X[idx])
            self._rad[mask] = r
        return r

    def diameter(self, mask: int) -> float:
        d = self._diam.get(mask)
        if d is None:
            low = mask & -mask
            i = low.bit_length() - 1
            rest = mask ^ low
            others = self.members(rest)
            d = max(self.diameter(rest), float(self.D[i, others].max()) if others else 0.0)
            self._diam[mask] = d
        return d


def _labels_from_masks(masks, m: int) -> np.ndarray:
    labels = np.empty(m, dtype=int)
    for q, mask in enumerate(masks):
        for i in _SubsetCosts.members(mask):
            labels[i] = q
    return canonical_labels(labels)


def canonical_labels(labels) -> np.ndarray:
    """Relabel parts in order of first appearance (restricted-growth form)."""
    mapping = {}
    out = np.empty(len(labels), dtype=int)
    for i, q in enumerate(labels):
        out[i] = mapping.setdefault(int(q), len(mapping))
    return out


def _exact_minmax(m: int, k: int, cost, lower=None) -> tuple[float, list[int]]:
    """min over partitions into <= k parts of the max part cost (cost monotone).

    ``lower(mask) <= cost(mask)`` is an optional cheap bound used to skip parts
    before their (possibly expensive) cost is evaluated.
    """
    lower = lower or cost

    @lru_cache(maxsize=None)
    def solve(mask: int, j: int) -> tuple[float, int]:
        if j == 1 or mask & (mask - 1) == 0:
            return cost(mask), mask
        if mask.bit_count() <= j:
            # singletons everywhere; split off the lowest point
            low = mask & -mask
            return 0.0, low
        # with j >= 2 a single part is never strictly better than splitting
        # off one point, because the cost is monotone
        best, choice = np.inf, mask
        low = mask & -mask
        rest = mask ^ low
        sub = rest
        while True:
            part = low | sub
            if part != mask and lower(part) < best:
                c = cost(part)
                if c < best:
                    v = max(c, solve(mask ^ part, j - 1)[0])
                    if v < best:
                        best, choice = v, part
            if sub == 0:
                break
            sub = (sub - 1) & rest
        return best, choice

    full = (1 << m) - 1
    value = solve(full, k)[0]
    masks, mask, j = [], full, k
    while mask:
        part = solve(mask, j)[1]
        masks.append(part)
        mask ^= part
        j -= 1
    return value, masks


def _check(A: PointSet, k: int, mode: str, max_m: int, max_k: int) -> str:
    if int(k) != k or not (1 <= k <= A.m):
        raise DomainError(f"k must lie in 1..{A.m}, got {k}")
    if mode == "auto":
        mode = EXACT if A.m <= max_m and k <= max_k else GREEDY
    if mode not in (EXACT, GREEDY):
        raise DomainError(f"unknown mode {mode!r}")
    if mode == EXACT and k < A.m and (A.m > max_m or k > max_k):
        raise SizeCapError(
            f"exact mode is capped at m <= {max_m}, k <= {max_k} (got m={A.m}, k={k}); use greedy"
        )
    return mode


def _lex_less(a: list[float], b: list[float]) -> bool:
    for x, y in zip(a, b):
        if abs(x - y) > _TIE * (1.0 + abs(y)):
            return x < y
    return False


def _farthest_seeds(D: np.ndarray, first: int, k: int) -> list[int]:
    seeds = [first]
    gap = D[first].copy()
    gap[first] = -np.inf
    while len(seeds) < k:
        j = int(np.argmax(gap))
        seeds.append(j)
        gap = np.minimum(gap, D[j])
        gap[seeds] = -np.inf
    return seeds


def _balanced_assign(dist_to_parts: np.ndarray, fixed: dict[int, int]) -> np.ndarray:
    """Nearest-part assignment; ties go to the currently smallest part, then lowest index."""
    m, k = dist_to_parts.shape
    labels = np.full(m, -1, dtype=int)
    sizes = np.zeros(k, dtype=int)
    for i, q in fixed.items():
        labels[i] = q
        sizes[q] += 1
    for i in range(m):
        if labels[i] >= 0:
            continue
        row = dist_to_parts[i]
        lo = row.min()
        tied = np.flatnonzero(row <= lo + _TIE * (1.0 + lo))
        q = int(tied[np.argmin(sizes[tied])])
        labels[i] = q
        sizes[q] += 1
    return labels


def _masks(labels: np.ndarray, k: int) -> list[int]:
    masks = [0] * k
    for i, q in enumerate(labels):
        masks[q] |= 1 << i
    return masks


def _local_search(masks: list[int], cost, max_moves: int) -> list[int]:
    """Single-point moves that lexicographically shrink the sorted part costs."""
    masks = list(masks)
    k = len(masks)
    for _ in range(max_moves):
        costs = [cost(mk) for mk in masks]
        key = sorted(costs, reverse=True)
        worst = key[0]
        moved = False
        for q in range(k):
            if moved or abs(costs[q] - worst) > _TIE * (1.0 + worst):
                continue
            members = _SubsetCosts.members(masks[q])
            if len(members) < 2:
                continue
            for i in members:
                bit = 1 << i
                for t in range(k):
                    if t == q:
                        continue
                    trial = list(costs)
                    trial[q] = cost(masks[q] ^ bit)
                    trial[t] = cost(masks[t] | bit)
                    if _lex_less(sorted(trial, reverse=True), key):
                        masks[q] ^= bit
                        masks[t] |= bit
                        moved = True
                        break
                if moved:
                    break
        if not moved:
            break
    return masks


def _greedy_restart(costs: _SubsetCosts, k: int, first: int, objective: str):
    D = costs.D
    X = costs.X
    m = X.shape[0]
    seeds = _farthest_seeds(D, first, k)
    labels = _balanced_assign(D[:, seeds], {s: q for q, s in enumerate(seeds)})
    cost = costs.radius if objective == "radius" else costs.diameter

    for _ in range(GREEDY_MAX_ITER):
        masks = _masks(labels, k)
        if objective == "radius":
            centers = []
            for mk in masks:
                idx = _SubsetCosts.members(mk)
                centers.append(X[idx[0]] if len(idx) == 1 else min_enclosing_ball(X[idx]).center)
            C = np.array(centers)
            score = np.sqrt(((X[:, None, :] - C[None, :, :]) ** 2).sum(axis=2))
        else:
            # complete linkage: distance to the farthest member of each part
            score = np.stack([D[:, _SubsetCosts.members(mk)].max(axis=1) for mk in masks], axis=1)
        # a point never leaves a part it would empty
        fixed = {}
        for q, mk in enumerate(masks):
            if mk & (mk - 1) == 0:
                fixed[mk.bit_length() - 1] = q
        new = _balanced_assign(score, fixed)
        # keep the current part when it ties with the best
        cur = score[np.arange(m), labels]
        best = score.min(axis=1)
        keep = cur <= best + _TIE * (1.0 + best)
        new[keep] = labels[keep]
        # stop rather than let a whole part migrate away
        if np.array_equal(new, labels) or np.unique(new).size < k:
            break
        labels = new
    masks = _local_search(_masks(labels, k), cost, max_moves=10 * m)
    value = max(cost(mk) for mk in masks)
    return value, masks


def _greedy_minmax(A: PointSet, k: int, objective: str, costs: _SubsetCosts | None = None):
    costs = costs or _SubsetCosts(A)
    m = A.m
    if k == m:
        return 0.0, np.arange(m)
    firsts = list(dict.fromkeys((r * m) // GREEDY_RESTARTS for r in range(GREEDY_RESTARTS)))
    run = lambda f: _greedy_restart(costs, k, f, objective)  # noqa: E731
    workers = min(max_workers(), len(firsts))
    if workers > 1:
        with ThreadPoolExecutor(workers) as ex:
            results = list(ex.map(run, firsts))
    else:
        results = [run(f) for f in firsts]
    # lowest value wins, earliest restart on ties
    value, masks = min(results, key=lambda r: r[0])
    return value, _labels_from_masks(masks, m)


def covering_radius(
    A, k: int, mode: str = EXACT, *, max_m: int = EXACT_MAX_M, max_k: int = EXACT_MAX_K
) -> tuple[float, np.ndarray]:
    """Optimal (exact) or heuristic (greedy) k-ball covering radius and the induced partition."""
    A = as_pointset(A)
    mode = _check(A, k, mode, max_m, max_k)
    if k == A.m:
        return 0.0, np.arange(A.m)
    costs = _SubsetCosts(A)
    if mode == EXACT:
        value, masks = _exact_minmax(A.m, k, costs.radius, lambda s: 0.5 * costs.diameter(s))
        return value, _labels_from_masks(masks, A.m)
    return _greedy_minmax(A, k, "radius", costs)


def partition_diameter(
    A, k: int, mode: str = EXACT, *, max_m: int = EXACT_MAX_M, max_k: int = EXACT_MAX_K
) -> tuple[float, np.ndarray]:
    """Optimal (exact) or heuristic (greedy) max part diameter over <= k-part partitions."""
    A = as_pointset(A)
    mode = _check(A, k, mode, max_m, max_k)
    if k == A.m:
        return 0.0, np.arange(A.m)
    costs = _SubsetCosts(A)
    if mode == EXACT:
        value, masks = _exact_minmax(A.m, k, costs.diameter)
        return value, _labels_from_masks(masks, A.m)
    return _greedy_minmax(A, k, "diameter", costs)


def _resolve_mode(m: int, k: int, mode: str, fallback: bool) -> str:
    if mode not in (EXACT, GREEDY, "auto"):
        raise DomainError(f"unknown mode {mode!r}")
    if mode == "auto":
        return EXACT if m <= EXACT_MAX_M and k <= EXACT_MAX_K else GREEDY
    if mode == EXACT and (m > EXACT_MAX_M or k > EXACT_MAX_K):
        if not fallback:
            raise SizeCapError(f"exact mode is capped at m <= {EXACT_MAX_M}, k <= {EXACT_MAX_K}")
        return GREEDY_FALLBACK
    return mode


def profiles_for(A, k_grid, mode: str = GREEDY, *, fallback: bool = True, family: str | None = None):
    """Covering and partition profiles of one point set over ``k_grid``.

    Values are made nonincreasing in k (a <= k'-part partition is also a
    <= k-part one for k >= k'). With ``fallback`` a cell beyond the exact
    caps is computed greedily and marked as such.
    """
    A = as_pointset(A)
    ks = sorted({int(k) for k in k_grid if 1 <= k <= A.m})
    if not ks:
        raise DomainError("k grid has no value in 1..m")
    cov = CoveringProfile(A.m, family=family)
    part = PartitionProfile(A.m, family=family)
    costs = _SubsetCosts(A)
    run_rho = run_delta = np.inf
    for k in ks:
        cell = _resolve_mode(A.m, k, mode, fallback)
        if k == A.m:
            rho = delta = 0.0
        elif cell == EXACT:
            rho = _exact_minmax(A.m, k, costs.radius, lambda s: 0.5 * costs.diameter(s))[0]
            delta = _exact_minmax(A.m, k, costs.diameter)[0]
        else:
            rho = _greedy_minmax(A, k, "radius", costs)[0]
            delta = _greedy_minmax(A, k, "diameter", costs)[0]
        run_rho = min(run_rho, rho)
        run_delta = min(run_delta, delta)
        cov.entries.append(ProfileEntry(k, float(run_rho), cell))
        part.entries.append(ProfileEntry(k, float(run_delta), cell))
    return cov, part


def mnc_profile(
    generator_id: str,
    m_grid,
    k_grid,
    mode: str = GREEDY,
    *,
    params: dict | None = None,
    normalize: str | None = None,
    fallback: bool = True,
) -> tuple[list[CoveringProfile], list[PartitionProfile]]:
    """Profiles of a generator family over a grid of truncation sizes.

    Families are generated at their intrinsic scale (the orthonormal and
    example families already have Chebyshev radius 1 in the limit).
    ``normalize="radius"`` rescales each truncation to radius exactly 1.
    """
    if generator_id not in FAMILIES:
        raise DomainError(f"unknown generator {generator_id!r}")
    if not len(m_grid) or not len(k_grid):
        raise DomainError("m and k grids must be non-empty")
    if normalize not in (None, "radius"):
        raise DomainError(f"unknown normalization {normalize!r}")
    covs, parts = [], []
    for m in m_grid:
        A = build(FamilySpec(generator_id, int(m), dict(params or {})))
        if normalize == "radius":
            r = min_enclosing_ball(A).radius
            if r > 0:
                A = A.scaled(1.0 / r)
        cov, part = profiles_for(A, k_grid, mode, fallback=fallback, family=generator_id)
        covs.append(cov)
        parts.append(part)
    return covs, parts


def sphere_slice_mnc(
    A, result: ChebyshevResult, tol: float | None = None, k_grid=None, mode: str = "auto"
) -> PartitionProfile:
    """Partition profile of the points lying on the boundary sphere of ``result``.

    ``result`` may be a solver certificate or a known ball (e.g. the unit
    ball centered at 0 for the example families). An empty slice gives an
    empty profile with ``empty=True``.
    """
    A = as_pointset(A)
    idx = sphere_indices(A, result.center, result.radius, tol)
    if idx.size == 0:
        return PartitionProfile(0, [], empty=True, indices=())
    S = A.subset(idx)
    ks = range(1, S.m + 1) if k_grid is None else k_grid
    _, part = profiles_for(S, ks, mode)
    part.indices = tuple(int(i) for i in idx)
    return part
