"""Extraction of p-simplices with long edges from a point set.

Two routes answer "does A contain p+1 points pairwise at distance >= tau":
a greedy farthest-point growth that is sound but may miss solutions, and an
exact maximum-clique search on the threshold graph for small inputs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import DomainError, SizeCapError
from .geometry import SQRT2, _row_distances, as_pointset, diameter, distance_matrix
from .jung import ExtremalityReport, simplex_chebyshev_bound

EXACT_SIZE_CAP = 64
GREEDY_ALL_SEEDS_MAX = 512
# relative slack on "distance >= threshold"; absorbs the last-ulp rounding of
# points that sit exactly at the threshold, e.g. regular simplices
EDGE_RTOL = 1e-12

DEFAULT_EPS_GRID = (0.3, 0.1, 0.03, 0.01)
DEFAULT_P_GRID = (1, 2, 5, 10, 20)

GREEDY_EXHAUSTED = "greedy-exhausted"
PROVEN_NONEXISTENT = "proven-nonexistent"


def meets(distance, threshold: float):
    return distance >= threshold * (1.0 - EDGE_RTOL)


@dataclass(frozen=True)
class SimplexCertificate:
    vertex_indices: tuple[int, ...]
    p: int
    threshold: float
    min_edge: float

    def to_dict(self) -> dict:
        return {
            "vertex_indices": list(self.vertex_indices),
            "p": self.p,
            "threshold": self.threshold,
            "min_edge": self.min_edge,
        }


@dataclass(frozen=True)
class ExtractionOutcome:
    """Either a certificate or a failure record.

    ``best_size`` is the largest vertex set with all edges above threshold
    that the search met; for ``proven-nonexistent`` it is the clique number
    of the threshold graph.
    """

    certificate: SimplexCertificate | None
    mode: str | None
    best_size: int

    @property
    def found(self) -> bool:
        return self.certificate is not None

    def to_dict(self) -> dict:
        return {
            "found": self.found,
            "certificate": None if self.certificate is None else self.certificate.to_dict(),
            "failure_mode": self.mode,
            "best_size": self.best_size,
        }


def _min_pairwise(X: np.ndarray, idx) -> float:
    return min(
        float(np.linalg.norm(X[i] - X[j])) for i, j in itertools.combinations(idx, 2)
    )


def _make_certificate(X, idx, p, threshold) -> SimplexCertificate:
    idx = tuple(sorted(int(i) for i in idx))
    return SimplexCertificate(idx, p, float(threshold), _min_pairwise(X, idx))


def _check_args(A, threshold, p):
    if int(p) != p or p < 1:
        raise DomainError("p must be a positive integer")
    if not threshold > 0:
        raise DomainError("threshold must be positive")
    if p + 1 > A.m:
        raise DomainError(f"a {p}-simplex needs {p + 1} points, the set has {A.m}")


def _diametral_pair(X: np.ndarray) -> tuple[int, int]:
    best, pair = -1.0, (0, 0)
    for i in range(X.shape[0]):
        row = _row_distances(X, i)
        j = int(np.argmax(row))
        if row[j] > best:
            best, pair = float(row[j]), (i, j)
    return pair


def extract_greedy(A, threshold: float, p: int, *, dist: np.ndarray | None = None) -> ExtractionOutcome:
    """Grow vertex sets by farthest-point insertion until p+1 vertices are reached.

    Every index is tried as a seed when m <= 512, otherwise the two endpoints
    of a diametral pair. The first seed (lowest index) that succeeds wins.
    """
    A = as_pointset(A)
    _check_args(A, threshold, p)
    X = A.points
    m = A.m
    if dist is None and m <= GREEDY_ALL_SEEDS_MAX:
        dist = distance_matrix(A)
    row = (lambda i: dist[i]) if dist is not None else (lambda i: _row_distances(X, i))
    seeds = range(m) if m <= GREEDY_ALL_SEEDS_MAX else sorted(set(_diametral_pair(X)))

    best = 1
    for seed in seeds:
        chosen = [seed]
        gap = row(seed).copy()
        gap[seed] = -np.inf
        while len(chosen) < p + 1:
            j = int(np.argmax(gap))
            if not meets(gap[j], threshold):
                break
            chosen.append(j)
            gap = np.minimum(gap, row(j))
            gap[chosen] = -np.inf
        best = max(best, len(chosen))
        if len(chosen) == p + 1:
            return ExtractionOutcome(_make_certificate(X, chosen, p, threshold), None, p + 1)
    return ExtractionOutcome(None, GREEDY_EXHAUSTED, best)


def _color_order(cand: int, adj: list[int]) -> list[tuple[int, int]]:
    """Greedy sequential coloring of the candidate bitset.

    Returns (vertex, color number) pairs sorted by color; the color number
    bounds the clique size achievable from that vertex onward.
    """
    out = []
    color = 0
    remaining = cand
    while remaining:
        color += 1
        avail = remaining
        while avail:
            low = avail & -avail
            v = low.bit_length() - 1
            out.append((v, color))
            remaining &= ~low
            avail &= ~low & ~adj[v]
    return out


def max_clique_search(adj: list[int], target: int | None = None) -> list[int]:
    """Branch-and-bound maximum clique with coloring bounds.

    ``adj`` holds neighbour bitsets. Stops early once a clique of size
    ``target`` is found.
    """
    n = len(adj)
    best: list[int] = []
    clique: list[int] = []

    class _Found(Exception):
        pass

    def expand(cand: int):
        nonlocal best
        for v, bound in reversed(_color_order(cand, adj)):
            if len(clique) + bound <= len(best):
                return
            clique.append(v)
            if target is not None and len(clique) >= target:
                best = clique.copy()
                raise _Found
            new = cand & adj[v]
            if new:
                expand(new)
            elif len(clique) > len(best):
                best = clique.copy()
            clique.pop()
            cand &= ~(1 << v)

    try:
        expand((1 << n) - 1 if n else 0)
    except _Found:
        pass
    return sorted(best)


def threshold_graph(D: np.ndarray, threshold: float) -> list[int]:
    m = D.shape[0]
    adj = []
    for i in range(m):
        bits = 0
        for j in np.flatnonzero(meets(D[i], threshold)):
            if j != i:
                bits |= 1 << int(j)
        adj.append(bits)
    return adj


def extract_exact(
    A, threshold: float, p: int, *, cap: int = EXACT_SIZE_CAP, dist: np.ndarray | None = None
) -> ExtractionOutcome:
    """Decide exactly whether A holds a p-simplex with all edges >= threshold."""
    A = as_pointset(A)
    _check_args(A, threshold, p)
    if A.m > cap:
        raise SizeCapError(f"exact extraction is capped at {cap} points (got {A.m}); use greedy mode")
    D = distance_matrix(A) if dist is None else dist
    clique = max_clique_search(threshold_graph(D, threshold), target=p + 1)
    if len(clique) >= p + 1:
        return ExtractionOutcome(_make_certificate(A.points, clique, p, threshold), None, p + 1)
    return ExtractionOutcome(None, PROVEN_NONEXISTENT, len(clique))


def verify_simplex(A, cert: SimplexCertificate) -> bool:
    """Recompute the edges of a certificate and check threshold and min_edge."""
    A = as_pointset(A)
    idx = cert.vertex_indices
    if len(idx) != cert.p + 1 or len(set(idx)) != len(idx):
        return False
    if any(not (0 <= i < A.m) for i in idx):
        return False
    actual = _min_pairwise(A.points, idx)
    return bool(meets(actual, cert.threshold)) and abs(actual - cert.min_edge) <= 1e-12 * max(1.0, actual)


@dataclass(frozen=True)
class WitnessAttempt:
    eps: float
    p: int
    threshold: float
    outcome: ExtractionOutcome
    bound: float | None


@dataclass(frozen=True)
class WitnessSummary:
    """Simplex-based lower bounds on the Chebyshev radius, in units where d(A) = sqrt(2).

    Jung's inequality caps the radius at 1 in those units, so a lower bound
    close to 1 is evidence of near-extremality.
    """

    witness_lower_bound: float | None
    scale: float
    attempts: list[WitnessAttempt] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "witness_lower_bound": self.witness_lower_bound,
            "scale": self.scale,
            "attempts": [
                {
                    "eps": a.eps,
                    "p": a.p,
                    "threshold": a.threshold,
                    "bound": a.bound,
                    **a.outcome.to_dict(),
                }
                for a in self.attempts
            ],
        }


def extremality_witness(
    A,
    eps_grid=DEFAULT_EPS_GRID,
    p_grid=DEFAULT_P_GRID,
    *,
    mode: str = "greedy",
    normalize: bool = True,
) -> WitnessSummary:
    """Try to extract p-simplices with edges >= sqrt(2) - eps for every (eps, p).

    With ``normalize`` the set is first scaled to diameter sqrt(2); every
    success yields a Chebyshev-radius lower bound and the largest one is
    reported.
    """
    A = as_pointset(A)
    if not len(eps_grid) or not len(p_grid):
        raise DomainError("eps and p grids must be non-empty")
    if any(not (0.0 < e < SQRT2) for e in eps_grid):
        raise DomainError("every eps must lie in (0, sqrt(2))")
    if mode not in ("greedy", "exact"):
        raise DomainError(f"unknown extraction mode {mode!r}")
    scale = 1.0
    if normalize:
        d = diameter(A)
        if d <= 0:
            raise DomainError("cannot normalize a set of diameter 0")
        scale = SQRT2 / d
        A = A.scaled(scale)
    ps = sorted({int(p) for p in p_grid if 1 <= p <= A.m - 1})
    if not ps:
        raise DomainError("no p in the grid fits the point count")
    D = distance_matrix(A) if A.m <= GREEDY_ALL_SEEDS_MAX or mode == "exact" else None
    extract = extract_exact if mode == "exact" else extract_greedy

    attempts = []
    best = None
    for eps in eps_grid:
        tau = SQRT2 - eps
        for p in ps:
            out = extract(A, tau, p, dist=D)
            bound = None
            if out.found:
                bound = simplex_chebyshev_bound(p, out.certificate.min_edge)
                best = bound if best is None else max(best, bound)
            attempts.append(WitnessAttempt(float(eps), p, tau, out, bound))
    return WitnessSummary(best, scale, attempts)


def with_witness(report: ExtremalityReport, summary: WitnessSummary) -> ExtremalityReport:
    """Copy of ``report`` carrying the witness lower bound."""
    return replace(report, witness_lower_bound=summary.witness_lower_bound)
