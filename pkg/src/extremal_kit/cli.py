"""Command-line front end.

Exit codes: 0 success, 2 parse error, 3 domain error, 4 non-convergence,
5 invariant failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import __version__
from .chebyshev import min_enclosing_ball, verify_certificate
from .checks import point_set_suite, report_suite
from .errors import DomainError, NonConvergenceError
from .formats import (
    ParseError,
    atomic_write,
    dump_report,
    fmt,
    load_report,
    points_to_csv,
    read_points_csv,
)
from .generators import FAMILIES, FamilySpec, build
from .geometry import PointSet
from .jung import extremality_report
from .mnc import profiles_for
from .simplex import (
    DEFAULT_EPS_GRID,
    DEFAULT_P_GRID,
    extract_exact,
    extract_greedy,
    extremality_witness,
    with_witness,
)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_DOMAIN = 3
EXIT_NONCONVERGENCE = 4
EXIT_INVARIANT = 5


def _float_list(text: str) -> list[float]:
    try:
        vals = [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}") from None
    if not vals:
        raise argparse.ArgumentTypeError("empty list")
    return vals


def _int_list(text: str) -> list[int]:
    try:
        vals = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of integers: {text!r}") from None
    if not vals:
        raise argparse.ArgumentTypeError("empty list")
    return vals


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="extremal-kit",
        description="Chebyshev radii, Jung-bound extremality, simplex extraction and covering profiles.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_input(p, grid_m=False):
        src = p.add_argument_group("input (exactly one of --input, --family, --config)")
        src.add_argument("--input", help="point-cloud CSV file")
        src.add_argument("--family", choices=FAMILIES, help="generator family")
        src.add_argument("--config", help="JSON file holding a family spec")
        if grid_m:
            src.add_argument("--m", type=_int_list, help="truncation size(s), comma-separated")
        else:
            src.add_argument("--m", type=int, help="truncation size")
        src.add_argument("--n", type=int, help="regular-simplex dimension (sets m = n + 1)")
        src.add_argument("--gamma", type=float, help="example2 mutual distance")
        src.add_argument("--s", type=float, help="scaled-orthonormal factor")
        src.add_argument("--edge", type=float, help="regular-simplex edge length")
        src.add_argument("--d", type=int, help="random-sphere ambient dimension")
        src.add_argument("--seed", type=int, default=0, help="random-sphere seed")

    def add_output(p, default_format="json"):
        p.add_argument("--out", help="output path (default: stdout)")
        p.add_argument("--format", choices=("csv", "json"), default=default_format)

    p = sub.add_parser("analyze", help="diameter, Chebyshev radius, Jung ratio and classification")
    add_input(p)
    add_output(p)
    p.add_argument("--tol", type=float, default=1e-6, help="classification tolerance")
    p.add_argument("--eps-grid", type=_float_list)
    p.add_argument("--p-grid", type=_int_list)
    p.add_argument("--max-pivots", type=int, default=200, help=argparse.SUPPRESS)

    p = sub.add_parser("extract", help="find p-simplices with long edges")
    add_input(p)
    add_output(p)
    p.add_argument("--mode", choices=("greedy", "exact"), default="greedy")
    p.add_argument("--threshold", type=float, help="raw edge threshold (with --p)")
    p.add_argument("--p", type=int, help="simplex dimension for --threshold")
    p.add_argument("--eps-grid", type=_float_list)
    p.add_argument("--p-grid", type=_int_list)

    p = sub.add_parser("profile", help="covering-radius and partition-diameter profiles as CSV")
    add_input(p, grid_m=True)
    add_output(p, default_format="csv")
    p.add_argument("--k-grid", type=_int_list, required=True)
    p.add_argument("--mode", choices=("greedy", "exact", "auto"), default="auto")
    p.add_argument("--normalize", choices=("none", "radius"), default="none")

    p = sub.add_parser("generate", help="write a generator family as a point-cloud CSV")
    add_input(p)
    p.add_argument("--out", help="output path (default: stdout)")

    p = sub.add_parser("verify", help="run invariant suites on a point set or a stored report")
    add_input(p)
    p.add_argument("--report", help="JSON report from 'analyze' to check")
    p.add_argument("--eps-grid", type=_float_list, help="fractions of r for the annulus checks")
    return parser


def _family_params(args) -> dict:
    params = {}
    for key in ("gamma", "s", "edge", "d"):
        val = getattr(args, key, None)
        if val is not None:
            params[key] = val
    if args.family == "random-sphere":
        params["seed"] = args.seed
    return params


def _spec_for(args, m: int | None) -> FamilySpec:
    if args.family == "regular-simplex" and args.n is not None:
        m = args.n + 1
    if m is None:
        raise DomainError("--family needs --m (or --n for regular-simplex)")
    return FamilySpec(args.family, m, _family_params(args))


def _load_config(path: str) -> FamilySpec:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ParseError(f"{path}: cannot read config ({exc})") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}:{exc.lineno}: invalid JSON ({exc.msg})") from None
    if not isinstance(data, dict):
        raise ParseError(f"{path}: config must be a JSON object")
    return FamilySpec.from_dict(data)


def _sources(args) -> int:
    return sum(x is not None for x in (args.input, args.family, args.config))


def resolve_input(args) -> tuple[PointSet, str]:
    if _sources(args) != 1:
        raise DomainError("give exactly one of --input, --family, --config")
    if args.input is not None:
        return read_points_csv(args.input), args.input
    if args.config is not None:
        spec = _load_config(args.config)
    else:
        spec = _spec_for(args, args.m)
    return build(spec), spec.family_id


def _emit(text: str, out: str | None) -> None:
    if out:
        atomic_write(out, text)
    else:
        sys.stdout.write(text)


def _flat_csv(payload: dict) -> str:
    lines = ["key,value"]
    for key, val in payload.items():
        if isinstance(val, float):
            lines.append(f"{key},{fmt(val)}")
        elif isinstance(val, (int, str)) or val is None:
            lines.append(f"{key},{'' if val is None else val}")
    return "\n".join(lines) + "\n"


def cmd_analyze(args) -> int:
    A, source = resolve_input(args)
    res = min_enclosing_ball(A, max_pivots=args.max_pivots)
    report = extremality_report(A, args.tol, result=res)
    witness = None
    if args.eps_grid or args.p_grid:
        witness = extremality_witness(A, args.eps_grid or DEFAULT_EPS_GRID, args.p_grid or DEFAULT_P_GRID)
        report = with_witness(report, witness)
    payload = {
        "command": "analyze",
        "source": source,
        "m": A.m,
        "dim": A.dim,
        **report.to_dict(),
        "classification_tol": args.tol,
        "center": [float(x) for x in res.center],
        "support": [[i, w] for i, w in res.support],
        "certificate_valid": verify_certificate(A, res),
    }
    if witness is not None:
        payload["witness"] = witness.to_dict()
    _emit(dump_report(payload) if args.format == "json" else _flat_csv(payload), args.out)
    print(
        f"m={A.m} dim={A.dim} diameter={fmt(report.diameter)} radius={fmt(report.radius)} "
        f"ratio={fmt(report.ratio)} J(E^{report.affine_dim_bound})={fmt(report.finite_dim_bound)} "
        f"class={report.classification}",
        file=sys.stderr,
    )
    return EXIT_OK


def cmd_extract(args) -> int:
    A, source = resolve_input(args)
    payload = {"command": "extract", "source": source, "m": A.m, "dim": A.dim, "mode": args.mode}
    if args.threshold is not None:
        if args.p is None:
            raise DomainError("--threshold needs --p")
        fn = extract_exact if args.mode == "exact" else extract_greedy
        out = fn(A, args.threshold, args.p)
        payload.update(out.to_dict())
        summary = (
            f"found {args.p}-simplex, min_edge={fmt(out.certificate.min_edge)}"
            if out.found
            else f"{out.mode}: largest clique {out.best_size}"
        )
    else:
        p_grid = args.p_grid or ([args.p] if args.p is not None else None)
        if p_grid is not None and any(p < 1 or p > A.m - 1 for p in p_grid):
            raise DomainError(f"every p must lie in 1..{A.m - 1}")
        w = extremality_witness(
            A, args.eps_grid or DEFAULT_EPS_GRID, p_grid or DEFAULT_P_GRID, mode=args.mode
        )
        payload.update(w.to_dict())
        summary = f"witness_lower_bound={w.witness_lower_bound}"
    _emit(dump_report(payload) if args.format == "json" else _flat_csv(payload), args.out)
    print(summary, file=sys.stderr)
    return EXIT_OK


def cmd_profile(args) -> int:
    rows = ["family,m,k,mode,rho,delta"]
    if _sources(args) != 1:
        raise DomainError("give exactly one of --input, --family, --config")
    if args.family is not None and args.family != "regular-simplex" and not args.m:
        raise DomainError("--family needs --m")
    if args.input is not None or args.config is not None:
        A, name = resolve_input(argparse.Namespace(**{**vars(args), "m": None}))
        targets = [(name, A)]
    elif args.family == "regular-simplex" and args.n is not None:
        spec = _spec_for(args, None)
        targets = [(spec.family_id, build(spec))]
    else:
        targets = [(args.family, build(_spec_for(args, m))) for m in args.m]
    for name, A in targets:
        if args.normalize == "radius":
            r = min_enclosing_ball(A).radius
            if r > 0:
                A = A.scaled(1.0 / r)
        cov, part = profiles_for(A, args.k_grid, args.mode, fallback=True, family=name)
        for c, d in zip(cov.entries, part.entries):
            rows.append(f"{name},{A.m},{c.k},{c.mode},{fmt(c.value)},{fmt(d.value)}")
    if args.format == "json":
        keys = rows[0].split(",")
        recs = [dict(zip(keys, r.split(","))) for r in rows[1:]]
        for rec in recs:
            for key in ("m", "k"):
                rec[key] = int(rec[key])
            for key in ("rho", "delta"):
                rec[key] = float(rec[key])
        _emit(dump_report({"command": "profile", "rows": recs}), args.out)
    else:
        _emit("\n".join(rows) + "\n", args.out)
    return EXIT_OK


def cmd_generate(args) -> int:
    A, _ = resolve_input(args)
    _emit(points_to_csv(A), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.report is not None:
        if _sources(args):
            raise DomainError("--report cannot be combined with a point-set input")
        checks = report_suite(load_report(args.report))
    else:
        A, _ = resolve_input(args)
        fractions = tuple(args.eps_grid) if args.eps_grid else (0.1, 0.3, 0.5, 0.7, 0.9)
        if any(not (0.0 < f < 1.0) for f in fractions):
            raise DomainError("--eps-grid entries are fractions of r in (0, 1)")
        checks = point_set_suite(A, fractions)
    for c in checks:
        print(c.line())
    return EXIT_OK if all(c.passed for c in checks) else EXIT_INVARIANT


COMMANDS = {
    "analyze": cmd_analyze,
    "extract": cmd_extract,
    "profile": cmd_profile,
    "generate": cmd_generate,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except NonConvergenceError as exc:
        extra = "" if exc.residual is None or math.isnan(exc.residual) else f" (residual {exc.residual:.3e})"
        print(f"non-convergence: {exc}{extra}", file=sys.stderr)
        return EXIT_NONCONVERGENCE
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
