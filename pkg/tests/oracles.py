"""Independent reference computations used to freeze expected values.

Nothing here imports extremal_kit: the oracles take other routes (SLSQP,
grid refinement, brute-force enumeration) to the same quantities.
"""

import itertools
from functools import lru_cache

import numpy as np
from scipy.optimize import minimize


def meb_slsqp(X):
    """Minimum enclosing ball via SLSQP on min t s.t. |x_i - c|^2 <= t."""
    X = np.asarray(X, dtype=float)
    if len(X) == 1:
        return X[0].copy(), 0.0
    c0 = X.mean(axis=0)
    t0 = float(np.max(np.sum((X - c0) ** 2, axis=1)))
    z0 = np.append(c0, t0)
    cons = {
        "type": "ineq",
        "fun": lambda z: z[-1] - np.sum((X - z[:-1]) ** 2, axis=1),
        "jac": lambda z: np.hstack([2 * (X - z[:-1]), np.ones((len(X), 1))]),
    }
    res = minimize(
        lambda z: z[-1],
        z0,
        jac=lambda z: np.append(np.zeros(len(z) - 1), 1.0),
        constraints=[cons],
        method="SLSQP",
        options={"ftol": 1e-15, "maxiter": 1000},
    )
    c = res.x[:-1]
    return c, float(np.sqrt(np.max(np.sum((X - c) ** 2, axis=1))))


def meb_grid_refine(X, rounds=60, grid=5):
    """Pattern search: evaluate a grid around the current best center, shrink, repeat."""
    X = np.asarray(X, dtype=float)
    d = X.shape[1]
    c = X.mean(axis=0)
    f = lambda y: float(np.max(np.linalg.norm(X - y, axis=1)))  # noqa: E731
    step = float(np.max(np.ptp(X, axis=0))) or 1.0
    offsets = np.array(list(itertools.product(np.linspace(-1, 1, grid), repeat=d)))
    for _ in range(rounds):
        cands = c + step * offsets
        vals = [f(y) for y in cands]
        c = cands[int(np.argmin(vals))]
        step *= 0.6
    return c, f(c)


def brute_force_simplex(X, threshold, p, rtol=1e-12):
    """Does some (p+1)-subset have all pairwise distances >= threshold?"""
    X = np.asarray(X, dtype=float)
    for combo in itertools.combinations(range(len(X)), p + 1):
        if all(
            np.linalg.norm(X[i] - X[j]) >= threshold * (1 - rtol)
            for i, j in itertools.combinations(combo, 2)
        ):
            return True
    return False


def restricted_growth_strings(m, k):
    """All strings a with a_0 = 0, a_i <= 1 + max(a_<i), max(a) < k."""
    a = [0] * m

    def rec(i, top):
        if i == m:
            yield tuple(a)
            return
        for v in range(min(top + 2, k)):
            a[i] = v
            yield from rec(i + 1, max(top, v))

    if m == 0:
        return
    yield from rec(1, 0)


def partition_optimum(X, k, objective):
    """min over <= k-part partitions of the max per-part radius or diameter."""
    X = np.asarray(X, dtype=float)

    @lru_cache(maxsize=None)
    def cost(part):
        pts = X[list(part)]
        if len(part) == 1:
            return 0.0
        if objective == "diameter":
            return max(np.linalg.norm(pts[i] - pts[j]) for i, j in itertools.combinations(range(len(pts)), 2))
        return meb_slsqp(pts)[1]

    best = np.inf
    for rgs in restricted_growth_strings(len(X), k):
        parts = {}
        for i, q in enumerate(rgs):
            parts.setdefault(q, []).append(i)
        best = min(best, max(cost(tuple(p)) for p in parts.values()))
    return best


def count_rgs(m, k):
    return sum(1 for _ in restricted_growth_strings(m, k))
