"""Point-cloud CSV and JSON report files."""

from __future__ import annotations

import json
import math
import os
import tempfile

import numpy as np

from .errors import ExtremalKitError
from .geometry import PointSet

SCHEMA_VERSION = 1


class ParseError(ExtremalKitError):
    """Malformed input file; the message carries the offending line number."""


def fmt(x: float) -> str:
    return format(float(x), ".17g")


def parse_points_csv(text: str, source: str = "<input>") -> PointSet:
    """Parse one point per row, comma-separated, with an optional ``dim=<d>`` header."""
    rows = []
    dim = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if not rows and dim is None and line.lower().startswith("dim="):
            try:
                dim = int(line[4:])
            except ValueError:
                raise ParseError(f"{source}:{lineno}: bad header {line!r}") from None
            if dim < 1:
                raise ParseError(f"{source}:{lineno}: dimension must be positive")
            continue
        fields = [f.strip() for f in line.split(",")]
        try:
            row = [float(f) for f in fields]
        except ValueError:
            bad = next(f for f in fields if not _is_float(f))
            raise ParseError(f"{source}:{lineno}: cannot parse coordinate {bad!r}") from None
        if not all(math.isfinite(v) for v in row):
            raise ParseError(f"{source}:{lineno}: non-finite coordinate")
        expected = dim if dim is not None else (len(rows[0][1]) if rows else len(row))
        if len(row) != expected:
            raise ParseError(f"{source}:{lineno}: expected {expected} coordinates, got {len(row)}")
        rows.append((lineno, row))
    if not rows:
        raise ParseError(f"{source}: no points found")
    return PointSet(np.array([r for _, r in rows], dtype=np.float64))


def _is_float(s: str) -> bool:
    try:
        float(s)
    except ValueError:
        return False
    return True


def read_points_csv(path: str) -> PointSet:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except (OSError, UnicodeDecodeError) as exc:
        raise ParseError(f"{path}: cannot read input ({exc})") from None
    return parse_points_csv(text, path)


def points_to_csv(A: PointSet) -> str:
    lines = [f"dim={A.dim}"]
    lines += [",".join(fmt(v) for v in row) for row in A.points]
    return "\n".join(lines) + "\n"


def atomic_write(path: str, text: str) -> None:
    """Write through a temporary file in the target directory, then rename."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def dump_report(payload: dict) -> str:
    body = {"schema_version": SCHEMA_VERSION, **payload}
    return json.dumps(body, indent=2, sort_keys=False, default=_jsonable) + "\n"


def _jsonable(obj):
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def load_report(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ParseError(f"{path}: cannot read report ({exc})") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}:{exc.lineno}: invalid JSON ({exc.msg})") from None
    if not isinstance(data, dict) or data.get("schema_version") != SCHEMA_VERSION:
        raise ParseError(f"{path}: unsupported or missing schema_version")
    return data
