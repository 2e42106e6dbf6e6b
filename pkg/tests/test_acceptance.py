"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Every test records its line through the ``criterion`` fixture before it
asserts, so the summary at the end of a pytest run lists all ten.
"""

import itertools
import json
import math
import time
from functools import lru_cache

import numpy as np

from extremal_kit.chebyshev import annulus_reduction, min_enclosing_ball, support_identity_residual
from extremal_kit.chebyshev import ChebyshevResult
from extremal_kit.cli import main
from extremal_kit.formats import dump_report
from extremal_kit.generators import example1, example1_cauchy, example2, orthonormal_family, union
from extremal_kit.geometry import PointSet, diameter, distance_matrix
from extremal_kit.jung import eq9_bound, jung_constant, regular_simplex, simplex_chebyshev_bound
from extremal_kit.mnc import covering_radius, mnc_profile, partition_diameter, sphere_slice_mnc
from extremal_kit.simplex import extract_exact, extract_greedy, extremality_witness

from oracles import partition_optimum

SQRT2 = math.sqrt(2.0)
EPS_FRACTIONS = (0.1, 0.3, 0.5, 0.7, 0.9)


def _random_set(seed, m_max, d_max):
    rng = np.random.Generator(np.random.PCG64(seed))
    m = int(rng.integers(2, m_max + 1))
    d = int(rng.integers(1, d_max + 1))
    kind = seed % 3
    if kind == 0:
        X = rng.standard_normal((m, d))
    elif kind == 1:
        X = rng.uniform(-1.0, 1.0, (m, d))
    else:
        G = rng.standard_normal((m, d))
        X = G / np.linalg.norm(G, axis=1, keepdims=True)
    return PointSet(X)


@lru_cache(maxsize=None)
def _simplex_instances():
    return [(regular_simplex(n, 1.0),) for n in range(1, 13)]


@lru_cache(maxsize=None)
def _random_instances():
    out = []
    for seed in range(500):
        A = _random_set(seed, 50, 30)
        out.append((A, min_enclosing_ball(A)))
    return out


@lru_cache(maxsize=None)
def _annulus_instances():
    # the eps grid lives in (0, r), so zero-radius draws are skipped
    out = []
    seed = 10_000
    while len(out) < 100:
        A = _random_set(seed, 40, 12)
        seed += 1
        res = min_enclosing_ball(A)
        if res.radius == 0.0:
            continue
        subs = []
        for f in EPS_FRACTIONS:
            S = annulus_reduction(A, res, f * res.radius)
            subs.append((S, min_enclosing_ball(S)))
        out.append((A, res, subs))
    return out


def test_criterion_01_jung_equality(criterion):
    t0 = time.perf_counter()
    worst = 0.0
    for n in range(1, 13):
        A = regular_simplex(n, 1.0)
        res = min_enclosing_ball(A)
        worst = max(worst, abs(res.radius / diameter(A) - math.sqrt(n / (2 * (n + 1)))))
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-9 and elapsed < 1.0
    criterion(1, "Jung equality on regular simplices", ok, f"max|err|={worst:.2e} time={elapsed:.2f}s")
    assert ok


def test_criterion_02_hilbert_strictness(criterion):
    t0 = time.perf_counter()
    inst = _random_instances()
    strict_fail = jung_fail = 0
    for A, res in inst:
        d = diameter(A)
        if not res.radius < d / SQRT2:
            strict_fail += 1
        q = min(A.dim, A.m - 1)
        if res.radius > d * jung_constant(q) + 1e-7:
            jung_fail += 1
    elapsed = time.perf_counter() - t0
    ok = len(inst) == 500 and strict_fail == 0 and jung_fail == 0 and elapsed < 30.0
    criterion(2, "r < d/sqrt2 and r <= J(E^q) d on 500 sets", ok,
              f"strict_fail={strict_fail} jung_fail={jung_fail} time={elapsed:.2f}s")
    assert ok


def test_criterion_03_annulus_exactness(criterion):
    t0 = time.perf_counter()
    inst = _annulus_instances()
    worst_r = worst_c = 0.0
    for _A, res, subs in inst:
        for _S, rs in subs:
            worst_r = max(worst_r, abs(rs.radius - res.radius))
            worst_c = max(worst_c, float(np.linalg.norm(rs.center - res.center)))
    elapsed = time.perf_counter() - t0
    ok = worst_r <= 1e-7 and worst_c <= 1e-6 and elapsed < 60.0
    criterion(3, "annulus reduction keeps center and radius", ok,
              f"max|dr|={worst_r:.2e} max|dc|={worst_c:.2e} time={elapsed:.2f}s")
    assert ok


def test_criterion_04_support_identity(criterion):
    solved = [(A, min_enclosing_ball(A)) for (A,) in _simplex_instances()]
    solved += _random_instances()
    for A, res, subs in _annulus_instances():
        solved.append((A, res))
        solved.extend(subs)
    worst = 0.0
    for A, res in solved:
        if res.radius > 0:
            worst = max(worst, support_identity_residual(A, res) / res.radius**2)
    ok = worst <= 1e-6
    criterion(4, "support identity sum t_i |y_i - y_j|^2 = 2 r^2", ok,
              f"instances={len(solved)} max rel residual={worst:.2e}")
    assert ok


def test_criterion_05_forward_trend(criterion):
    t0 = time.perf_counter()
    misses = []
    for m in (8, 32, 128):
        A = orthonormal_family(m)
        D = distance_matrix(A)
        for eps in (0.3, 0.1, 0.01):
            for p in range(1, min(20, m - 1) + 1):
                if not extract_greedy(A, SQRT2 - eps, p, dist=D).found:
                    misses.append((m, eps, p))
    w = extremality_witness(orthonormal_family(128), (0.01,), (20,))
    bound = w.witness_lower_bound
    target = simplex_chebyshev_bound(20, SQRT2 - 0.01)
    elapsed = time.perf_counter() - t0
    ok = not misses and bound is not None and bound >= 0.975 and bound >= target and elapsed < 30.0
    criterion(5, "orthonormal extraction at sqrt2 - eps, witness >= 0.975", ok,
              f"misses={len(misses)} witness={bound!r} time={elapsed:.2f}s")
    assert ok


def test_criterion_06_long_edge_bound(criterion):
    grid = list(itertools.product((1, 2, 5, 10, 100), (4, 16, 100, 10_000)))
    worst = max(
        abs(eq9_bound(p, n) - math.sqrt((2 - 4 / math.sqrt(n)) * p / (2 * (p + 1)))) for p, n in grid
    )
    monotone = all(
        eq9_bound(p, n) <= eq9_bound(p + 1, n) for n in (4, 16, 100, 10_000) for p in range(1, 200)
    )
    far = eq9_bound(10**4, 10**8)
    ok = len(grid) == 20 and worst <= 1e-12 and monotone and far > 0.999
    criterion(6, "closed-form p-simplex bound", ok,
              f"grid={len(grid)} max|err|={worst:.1e} monotone={monotone} bound(1e4,1e8)={far:.6f}")
    assert ok


def _brute_force_found(adj, p):
    m = adj.shape[0]
    for combo in itertools.combinations(range(m), p + 1):
        if adj[np.ix_(combo, combo)][np.triu_indices(p + 1, 1)].all():
            return True
    return False


def test_criterion_07_exact_oracle_equivalence(criterion):
    t0 = time.perf_counter()
    mismatches = 0
    checked = 0
    for seed in range(50):
        rng = np.random.Generator(np.random.PCG64(70_000 + seed))
        m = int(rng.integers(3, 13))
        d = int(rng.integers(1, 6))
        A = PointSet(rng.standard_normal((m, d)))
        D = distance_matrix(A)
        # the oracle's adjacency comes from its own distance computation
        X = A.points
        own = np.sqrt(((X[:, None, :] - X[None, :, :]) ** 2).sum(axis=2))
        upper = own[np.triu_indices(m, 1)]
        for tau in np.quantile(upper, (0.1, 0.3, 0.5, 0.7, 0.9)):
            adj = own >= tau * (1 - 1e-12)
            np.fill_diagonal(adj, False)
            for p in range(1, m):
                checked += 1
                if extract_exact(A, float(tau), p, dist=D).found != _brute_force_found(adj, p):
                    mismatches += 1
    worst = 0.0
    for m, k in ((6, 2), (8, 2), (9, 3)):
        X = np.random.Generator(np.random.PCG64(7_000 + m * k)).standard_normal((m, 3))
        worst = max(
            worst,
            abs(covering_radius(X, k)[0] - partition_optimum(X, k, "radius")),
            abs(partition_diameter(X, k)[0] - partition_optimum(X, k, "diameter")),
        )
    elapsed = time.perf_counter() - t0
    ok = mismatches == 0 and worst <= 1e-7 and elapsed < 300.0
    criterion(7, "exact extraction and partitions vs enumeration", ok,
              f"cases={checked} mismatches={mismatches} partition max|err|={worst:.1e} time={elapsed:.1f}s")
    assert ok


def test_criterion_08_orthonormal_profiles(criterion):
    ms, ks = (8, 16, 32), (2, 4)
    covs, parts = mnc_profile("orthonormal", ms, ks)
    worst_delta = worst_rho = 0.0
    for m, cov, part in zip(ms, covs, parts):
        for k in ks:
            worst_delta = max(worst_delta, abs(part.values()[k] - SQRT2))
            worst_rho = max(worst_rho, abs(cov.values()[k] - math.sqrt(1 - k / m)))
    rho4 = [cov.values()[4] for cov in covs]
    increasing = all(a < b for a, b in zip(rho4, rho4[1:]))
    brute = abs(partition_optimum(np.eye(8), 2, "radius") - math.sqrt(1 - 2 / 8))
    ok = worst_delta <= 1e-12 and worst_rho <= 1e-9 and increasing and brute <= 1e-7
    criterion(8, "orthonormal delta = sqrt2, rho = sqrt(1 - k/m)", ok,
              f"max|ddelta|={worst_delta:.1e} max|drho|={worst_rho:.1e} increasing={increasing}")
    assert ok


def test_criterion_09_examples_fidelity(criterion):
    worst_gap = 0.0
    for gamma in (0.3, 1.0, SQRT2):
        D = distance_matrix(example2(gamma, 32))
        off = D[np.triu_indices(32, 1)]
        worst_gap = max(worst_gap, float(np.max(np.abs(off - gamma))))
    norms = np.linalg.norm(example1_cauchy(64).points, axis=1)
    worst_norm = float(np.max(np.abs(norms - 1.0)))
    slice_gap = 0.0
    for gamma in (0.3, 1.0):
        A = union(example1(12), example2(gamma, 12))
        prof = sphere_slice_mnc(A, ChebyshevResult(np.zeros(A.dim), 1.0, ()), k_grid=[1, 2, 4])
        slice_gap = max(slice_gap, max(abs(v - gamma) for v in prof.values().values()))
    ok = worst_gap <= 1e-12 and worst_norm <= 1e-12 and slice_gap <= 1e-12
    criterion(9, "example families and union slice", ok,
              f"pair gap={worst_gap:.1e} norm gap={worst_norm:.1e} slice gap={slice_gap:.1e}")
    assert ok


def test_criterion_10_cli_contract(criterion, tmp_path, capsys):
    pts, rep1, rep2, regen = (tmp_path / n for n in ("p.csv", "a.json", "b.json", "q.csv"))
    main(["generate", "--family", "random-sphere", "--m", "20", "--d", "6", "--seed", "5", "--out", str(pts)])
    main(["analyze", "--input", str(pts), "--out", str(rep1)])
    main(["analyze", "--family", "random-sphere", "--m", "20", "--d", "6", "--seed", "5", "--out", str(rep2)])
    main(["generate", "--input", str(pts), "--out", str(regen)])
    a, b = json.loads(rep1.read_text()), json.loads(rep2.read_text())
    stable = pts.read_bytes() == regen.read_bytes() and all(
        a[key] == b[key] for key in ("diameter", "radius", "ratio", "center", "support")
    )

    bad = tmp_path / "bad.csv"
    bad.write_text("1,2\n3,x\n")
    ragged = tmp_path / "ragged.csv"
    ragged.write_text("1,2\n3,4,5\n")
    single = tmp_path / "single.csv"
    single.write_text("1,2\n")
    drop = tmp_path / "drop.csv"
    drop.write_text("0.7,-1.2\n1.7,-0.8\n-0.6,0.4\n2.3,-0.1\n0.2,-2.2\n0.9,-0.3\n0.7,1.7\n-1.7,-0.3\n")
    corrupt = tmp_path / "corrupt.json"
    body = {k: v for k, v in a.items() if k != "schema_version"}
    body["ratio"] = 0.9
    corrupt.write_text(dump_report(body))
    scenarios = [
        (["analyze", "--input", str(bad)], 2),
        (["analyze", "--input", str(ragged)], 2),
        (["analyze", "--input", str(single)], 3),
        (["extract", "--family", "orthonormal", "--m", "4", "--p", "4"], 3),
        (["analyze", "--input", str(drop), "--max-pivots", "0"], 4),
        (["verify", "--report", str(corrupt)], 5),
    ]
    codes = [main(argv) for argv, _ in scenarios]
    capsys.readouterr()
    expected = [code for _, code in scenarios]
    ok = stable and codes == expected
    criterion(10, "CLI round trip and exit codes", ok, f"bit-stable={stable} exit codes={codes}")
    assert ok
