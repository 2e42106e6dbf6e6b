"""Invariant suites run by ``extremal-kit verify``."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .chebyshev import (
    annulus_reduction,
    min_enclosing_ball,
    support_identity_residual,
    verify_certificate,
)
from .geometry import PointSet, diameter, distance_matrix
from .jung import HILBERT_BOUND, classify, jung_constant
from .mnc import EXACT_MAX_K, EXACT_MAX_M, covering_radius, partition_diameter
from .simplex import EXACT_SIZE_CAP, extract_exact, extract_greedy, verify_simplex


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    residual: float
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f"  {self.detail}" if self.detail else ""
        return f"{status}  {self.name:<28} residual={self.residual:.3e}{extra}"


def point_set_suite(A: PointSet, eps_fractions=(0.1, 0.3, 0.5, 0.7, 0.9), k_max: int = 4) -> list[Check]:
    """Run every module's invariants against one point set."""
    checks = []
    d = diameter(A)
    D = distance_matrix(A)
    checks.append(Check("diameter-vs-matrix", d == float(D.max()), abs(d - float(D.max()))))

    res = min_enclosing_ball(A)
    r = res.radius
    checks.append(Check("certificate", verify_certificate(A, res), res.residual))
    n_support = int(np.sum(res.weights > 1e-9))
    checks.append(
        Check("support-size", n_support <= A.dim + 1, float(max(0, n_support - A.dim - 1)),
              f"support={n_support} dim={A.dim}")
    )
    ident = support_identity_residual(A, res)
    checks.append(Check("support-identity", ident <= 1e-6 * max(r * r, 1e-300) or r == 0, ident))

    if d > 0:
        q = max(1, min(A.dim, A.m - 1))
        jung_gap = r - d * jung_constant(q)
        checks.append(Check("jung-inequality", jung_gap <= 1e-7, max(0.0, jung_gap)))
        checks.append(Check("hilbert-strict", r < d / math.sqrt(2.0), max(0.0, r - d / math.sqrt(2.0))))

    if r > 0:
        worst_r = worst_c = 0.0
        for f in eps_fractions:
            sub = annulus_reduction(A, res, f * r)
            rs = min_enclosing_ball(sub)
            worst_r = max(worst_r, abs(rs.radius - r))
            worst_c = max(worst_c, float(np.linalg.norm(rs.center - res.center)))
        checks.append(Check("annulus-radius", worst_r <= 1e-7, worst_r))
        checks.append(Check("annulus-center", worst_c <= 1e-6, worst_c))

    aug = PointSet(np.vstack([A.points, res.center]))
    again = min_enclosing_ball(aug)
    drift = max(abs(again.radius - r), float(np.linalg.norm(again.center - res.center)))
    checks.append(Check("idempotence", drift <= 1e-9 * (1 + r), drift))

    if A.m >= 2 and d > 0:
        bad = 0
        for tau in (0.25 * d, 0.5 * d, 0.75 * d, d):
            p = min(2, A.m - 1)
            out = extract_greedy(A, tau, p, dist=D)
            if out.found and not verify_simplex(A, out.certificate):
                bad += 1
            if A.m <= EXACT_SIZE_CAP:
                exact = extract_exact(A, tau, p, dist=D)
                if out.found and not exact.found:
                    bad += 1
        checks.append(Check("greedy-soundness", bad == 0, float(bad)))

    worst = 0.0
    jung_q = jung_constant(max(1, min(A.dim, A.m - 1)))
    for k in range(1, min(k_max, A.m) + 1):
        mode = "exact" if A.m <= EXACT_MAX_M and k <= EXACT_MAX_K else "greedy"
        rho = covering_radius(A, k, mode)[0]
        delta = partition_diameter(A, k, mode)[0]
        worst = max(worst, rho - delta, delta - 2 * rho, rho - jung_q * delta)
    checks.append(Check("mnc-sandwich", worst <= 1e-9, max(0.0, worst)))
    return checks


def report_suite(report: dict) -> list[Check]:
    """Consistency checks on a stored extremality report."""
    checks = []
    try:
        d = float(report["diameter"])
        r = float(report["radius"])
        ratio = float(report["ratio"])
        fdb = float(report["finite_dim_bound"])
        hb = float(report["hilbert_bound"])
        q = int(report["affine_dim_bound"])
        cls = report["classification"]
    except (KeyError, TypeError, ValueError) as exc:
        return [Check("report-fields", False, math.inf, f"missing or bad field: {exc}")]
    checks.append(Check("ratio-definition", abs(ratio - r / d) <= 1e-12 * max(1.0, ratio), abs(ratio - r / d)))
    checks.append(Check("ratio-nonnegative", ratio >= 0, max(0.0, -ratio)))
    checks.append(Check("jung-inequality", ratio <= fdb + 1e-7, max(0.0, ratio - fdb)))
    checks.append(Check("hilbert-strict", ratio < hb, max(0.0, ratio - hb)))
    checks.append(Check("hilbert-bound", abs(hb - HILBERT_BOUND) <= 1e-15, abs(hb - HILBERT_BOUND)))
    expected = jung_constant(q) if q >= 1 else math.nan
    checks.append(Check("finite-dim-bound", abs(fdb - expected) <= 1e-12, abs(fdb - expected)))
    tol = float(report.get("classification_tol", 1e-6))
    want = classify(ratio, fdb, tol)
    checks.append(Check("classification", cls == want, 0.0 if cls == want else 1.0, f"expected {want}"))
    return checks
