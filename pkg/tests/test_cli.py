import json
import os
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from gencore.generators import random_instance
from gencore.matrix import EXACT_H, EXACT_T, Matrix

from conftest import I


def run_cli(args, env=None):
    cmd = [sys.executable, "-m", "gencore.cli", *args]
    return subprocess.run(cmd, capture_output=True, text=True, env=env)


def write(tmp_path: Path, name: str, M: Matrix) -> str:
    path = tmp_path / name
    path.write_text(json.dumps(M.to_json()), encoding="utf-8")
    return str(path)


def entries(doc):
    return Matrix.from_json(doc)


@pytest.fixture
def files(tmp_path):
    return {
        "a": write(tmp_path, "a.json", Matrix([[I, 0], [0, 0]], EXACT_H)),
        "b": write(tmp_path, "b.json", Matrix([[0, 0], [-1, 0]], EXACT_H)),
        "sum": write(tmp_path, "sum.json", Matrix([[I, 0], [-1, 0]], EXACT_H)),
        "r215": write(tmp_path, "r215.json", Matrix([[1, I], [0, 0]], EXACT_T)),
        "id": write(tmp_path, "id.json", Matrix.identity(3)),
        "gen": write(tmp_path, "gen.json", random_instance(5, 3, "conjugate_transpose", n_max=8).matrix),
        "bad": str(tmp_path / "missing.json"),
    }


def test_compute_pseudo_core_transpose(files):
    res = run_cli(["compute", files["a"], "--inverse", "pseudo-core", "--involution", "transpose"])
    assert res.returncode == 0, res.stderr
    doc = json.loads(res.stdout)
    assert doc["index"] == 1
    assert entries(doc["value"]) == Matrix([[-I, 0], [0, 0]], EXACT_T)


def test_compute_nonexistence_exits_2(files):
    res = run_cli(["compute", files["sum"], "--inverse", "pseudo-core", "--involution", "transpose"])
    assert res.returncode == 2
    doc = json.loads(res.stdout)
    assert doc["status"] == "nonexistent"
    assert doc["reason"] == "{1,3}-inverse of A^m nonexistent for all m ≤ n"
    assert doc["certificate"]


def test_compute_moore_penrose_identity(files):
    res = run_cli(["compute", files["id"], "--inverse", "moore-penrose"])
    assert res.returncode == 0
    assert entries(json.loads(res.stdout)["value"]) == Matrix.identity(3)


def test_compute_float_mode(files):
    res = run_cli(["compute", files["gen"], "--inverse", "pseudo_core", "--mode", "float"])
    assert res.returncode == 0, res.stderr
    doc = json.loads(res.stdout)
    assert doc["mode"] == "float" and max(doc["residuals"].values()) < 1e-9


def test_io_and_usage_errors_exit_1(files, tmp_path):
    assert run_cli(["compute", files["bad"], "--inverse", "core"]).returncode == 1
    garbage = tmp_path / "garbage.json"
    garbage.write_text("{not json", encoding="utf-8")
    res = run_cli(["compute", str(garbage), "--inverse", "core"])
    assert res.returncode == 1 and "invalid JSON" in res.stderr and res.stdout == ""
    ragged = tmp_path / "ragged.json"
    ragged.write_text(json.dumps({"rows": 2, "cols": 2, "entries": [[1, 2]]}), encoding="utf-8")
    assert run_cli(["compute", str(ragged), "--inverse", "core"]).returncode == 1
    assert run_cli(["compute", files["id"], "--inverse", "nonsense"]).returncode == 1
    assert run_cli(["compute", files["id"], "--inverse", "core", "--unknown-flag"]).returncode == 1
    assert run_cli([]).returncode == 1


def test_verify_examples(files):
    res = run_cli(["verify", files["a"], "--law", "T2.9"])
    assert res.returncode == 0 and json.loads(res.stdout)["laws"][0]["status"] == "pass"
    res = run_cli(["verify", files["r215"], "--law", "P2.14"])
    assert res.returncode == 0
    details = json.loads(res.stdout)["laws"][0]["details"]
    assert details["(1)"] is True and details["(3)"] is False
    assert "(1) holds" in details["summary"] and "(3) fails" in details["summary"]
    res = run_cli(["verify", files["id"], "--law", "all"])
    assert res.returncode == 0
    summary = json.loads(res.stdout)["summary"]
    assert summary["fail"] == 0 and summary["pass"] > 0


def test_verify_pair_law_with_second_matrix(files, tmp_path):
    a = write(tmp_path, "pa.json", Matrix([[1, 0], [0, 0]]))
    b = write(tmp_path, "pb.json", Matrix([[0, 0], [0, 1]]))
    res = run_cli(["verify", a, "--law", "T4.4", "--with", b])
    assert res.returncode == 0, res.stdout
    assert json.loads(res.stdout)["laws"][0]["status"] == "pass"
    assert run_cli(["verify", a, "--law", "Z1.0"]).returncode == 1


def test_compare_identity_and_generated(files):
    res = run_cli(["compare", files["id"]])
    assert res.returncode == 0
    assert all(row["max_relative_difference"] <= 1e-14 for row in json.loads(res.stdout)["pairwise"])
    res = run_cli(["compare", files["gen"], "--methods", "hs,cn,direct,exact"])
    doc = json.loads(res.stdout)
    assert len(doc["pairwise"]) == 6
    assert all(row["max_relative_difference"] <= 1e-8 for row in doc["pairwise"])
    assert set(doc["methods"]["hs"]["residuals"]) == {"I", "II", "III"}


def test_compare_rejects_transpose_for_float_methods(files):
    res = run_cli(["compare", files["r215"], "--methods", "hs"])
    assert res.returncode == 1 and "conjugate-transpose" in res.stderr
    res = run_cli(["compare", files["r215"], "--methods", "exact"])
    assert res.returncode == 0


def test_demos():
    res = run_cli(["demo", "remark-2.15"])
    assert res.returncode == 0
    doc = json.loads(res.stdout)
    core = next(s for s in doc["steps"] if s["label"] == "core inverse x")
    assert entries(core["matrix"]) == Matrix([[1, 0], [0, 0]], EXACT_T)
    assert doc["decisive"]["holds"] is True
    res = run_cli(["demo", "remark-4.5"])
    doc = json.loads(res.stdout)
    labels = {s["label"]: entries(s["matrix"]) for s in doc["steps"]}
    assert labels["pseudo core inverse of a"] == Matrix([[-I, 0], [0, 0]], EXACT_T)
    assert labels["pseudo core inverse of b"].is_zero()
    dec = doc["decisive"]
    assert dec["ba_nonzero"] and dec["power_pattern_verified"]
    assert [c["m"] for c in dec["one_three_certificates"] if c["nonexistent"]] == [1, 2]
    assert run_cli(["demo", "unknown-name"]).returncode == 1


def test_pretty_output(files):
    res = run_cli(["compute", files["a"], "--inverse", "pseudo-core", "--pretty"])
    assert res.returncode == 0
    rows = [line.strip() for line in res.stdout.splitlines() if line.strip().startswith("[")]
    assert rows[0].split() == ["[", "-i", "0", "]"]


def test_suite_verb():
    res = run_cli(["suite", "--seed", "1", "--cases", "1", "--scope", "T2.2"])
    assert res.returncode == 0
    assert json.loads(res.stdout)["summary"] == {"pass": 1, "fail": 0, "not-applicable": 0}
    assert run_cli(["suite", "--seed", "1", "--cases", "0"]).returncode == 1
    assert run_cli(["suite", "--seed", "1", "--cases", "1", "--scope", "nope"]).returncode == 1


def test_suite_is_byte_identical():
    args = ["suite", "--seed", "3", "--cases", "2", "--scope", "L2.1,T2.10,T4.3", "--involution", "both", "--full"]
    first, second = run_cli(args), run_cli(args)
    assert first.returncode == 0
    assert first.stdout == second.stdout
    parallel = run_cli(args + ["--workers", "2"])
    assert parallel.stdout == first.stdout


def test_tolerance_env(tmp_path):
    # 1e-7 survives squaring above n·eps, so only the override removes it
    near = write(tmp_path, "near.json", Matrix.from_numpy(np.diag([1.0, 1e-7, 0.0]).astype(complex)))
    env = dict(os.environ, GENCORE_TOL="1e-6")
    loose = json.loads(run_cli(["compute", near, "--inverse", "drazin", "--mode", "float"], env=env).stdout)
    tight = json.loads(run_cli(["compute", near, "--inverse", "drazin", "--mode", "float"]).stdout)
    assert entries(loose["value"]).to_numpy()[1, 1] == 0
    assert abs(entries(tight["value"]).to_numpy()[1, 1] - 1e7) < 1e-3
    bad = dict(os.environ, GENCORE_TOL="abc")
    assert run_cli(["compute", near, "--inverse", "drazin", "--mode", "float"], env=bad).returncode == 1
