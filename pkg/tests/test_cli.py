import json
import subprocess
import sys

import numpy as np
import pytest

from extremal_kit.cli import main
from extremal_kit.formats import dump_report, read_points_csv

NEEDS_A_DROP = np.array(
    [[0.7, -1.2], [1.7, -0.8], [-0.6, 0.4], [2.3, -0.1], [0.2, -2.2], [0.9, -0.3], [0.7, 1.7], [-1.7, -0.3]]
)


def _write(path, text):
    path.write_text(text, encoding="utf-8")
    return str(path)


def _csv(X):
    return "\n".join(",".join(repr(float(v)) for v in row) for row in X) + "\n"


def test_generate_analyze_round_trip_is_bit_stable(tmp_path, capsys):
    pts = tmp_path / "pts.csv"
    assert main(["generate", "--family", "example2", "--gamma", "0.7", "--m", "12", "--out", str(pts)]) == 0
    A = read_points_csv(str(pts))
    assert A.m == 12

    r1, r2 = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["analyze", "--input", str(pts), "--out", str(r1)]) == 0
    assert main(["analyze", "--family", "example2", "--gamma", "0.7", "--m", "12", "--out", str(r2)]) == 0
    a, b = json.loads(r1.read_text()), json.loads(r2.read_text())
    for key in ("diameter", "radius", "ratio", "center", "support", "classification"):
        assert a[key] == b[key]

    # regenerate from the written file: identical bytes
    pts2 = tmp_path / "pts2.csv"
    assert main(["generate", "--input", str(pts), "--out", str(pts2)]) == 0
    assert pts.read_bytes() == pts2.read_bytes()
    assert main(["verify", "--report", str(r1)]) == 0
    assert "PASS" in capsys.readouterr().out


def test_analyze_json_fields(tmp_path, capsys):
    assert main(["analyze", "--family", "regular-simplex", "--n", "4"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["schema_version"] == 1
    assert out["ratio"] == pytest.approx(np.sqrt(4 / 10), abs=1e-9)
    assert out["classification"] == "extremal-within-tol"
    assert out["certificate_valid"] is True


def test_config_input(tmp_path, capsys):
    cfg = _write(tmp_path / "c.json", json.dumps({"family_id": "orthonormal", "m": 5}))
    assert main(["analyze", "--config", cfg, "--format", "csv"]) == 0
    assert "ratio," in capsys.readouterr().out


def test_extract_witness(capsys):
    assert main(["extract", "--family", "orthonormal", "--m", "16", "--p-grid", "1,5"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["witness_lower_bound"] == pytest.approx(np.sqrt(2) * np.sqrt(5 / 12), abs=1e-12)


def test_extract_threshold(capsys):
    assert main(["extract", "--family", "orthonormal", "--m", "6", "--threshold", "1.4", "--p", "3",
                 "--mode", "exact"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert len(out["certificate"]["vertex_indices"]) == 4


def test_profile_csv(tmp_path):
    out = tmp_path / "prof.csv"
    assert main(["profile", "--family", "orthonormal", "--m", "8,16", "--k-grid", "2,4", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "family,m,k,mode,rho,delta"
    rows = [line.split(",") for line in lines[1:]]
    assert len(rows) == 4
    for fam, m, k, mode, rho, delta in rows:
        assert fam == "orthonormal"
        assert float(rho) == pytest.approx(np.sqrt(1 - int(k) / int(m)), abs=1e-9)
        assert float(delta) == pytest.approx(np.sqrt(2), abs=1e-12)
    assert {r[3] for r in rows} == {"exact", "greedy"}


def test_verify_point_set_passes(capsys):
    assert main(["verify", "--family", "random-sphere", "--m", "9", "--d", "4", "--seed", "3"]) == 0
    out = capsys.readouterr().out
    assert "FAIL" not in out and "mnc-sandwich" in out


# --- exit-code table ----------------------------------------------------------


def test_exit_malformed_csv(tmp_path):
    path = _write(tmp_path / "bad.csv", "1.0,2.0\n3.0,abc\n")
    assert main(["analyze", "--input", path]) == 2


def test_exit_ragged_csv(tmp_path, capsys):
    path = _write(tmp_path / "rag.csv", "1.0,2.0\n3.0,4.0,5.0\n")
    assert main(["analyze", "--input", path]) == 2
    assert ":2:" in capsys.readouterr().err


def test_exit_singleton_is_domain_error(tmp_path):
    path = _write(tmp_path / "one.csv", "1.0,2.0\n")
    assert main(["analyze", "--input", path]) == 3


def test_exit_p_out_of_range(tmp_path):
    assert main(["extract", "--family", "orthonormal", "--m", "4", "--p", "4"]) == 3


def test_exit_pivot_budget(tmp_path):
    path = _write(tmp_path / "drop.csv", _csv(NEEDS_A_DROP))
    assert main(["analyze", "--input", path, "--max-pivots", "0"]) == 4
    assert main(["analyze", "--input", path]) == 0


def test_exit_corrupted_report(tmp_path, capsys):
    path = tmp_path / "r.json"
    assert main(["analyze", "--family", "orthonormal", "--m", "6", "--out", str(path)]) == 0
    rep = json.loads(path.read_text())
    rep["ratio"] = 0.9  # beyond 1/sqrt 2
    path.write_text(dump_report({k: v for k, v in rep.items() if k != "schema_version"}))
    assert main(["verify", "--report", str(path)]) == 5
    assert "FAIL" in capsys.readouterr().out


def test_exit_bad_flag_is_parse_error():
    with pytest.raises(SystemExit) as exc:
        main(["analyze", "--nonsense"])
    assert exc.value.code == 2


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "extremal_kit", "generate", "--family", "orthonormal", "--m", "3"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout.splitlines() == ["dim=3", "1,0,0", "0,1,0", "0,0,1"]
