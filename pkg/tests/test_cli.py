import csv
import io
import json
import math
import shutil
from pathlib import Path

import numpy as np
import pytest

from hcmu import cli, pipeline

DATA = Path(__file__).parent / "data"

SMALL_ANGLES = {"euler_char": 2, "angles": [
    {"value": "2", "saddle": True}, {"value": "1/2"}, {"value": "1/3"}]}
GENUS_TWO = {"euler_char": -2, "angles": [{"value": "2", "saddle": True}] * 3}
HALF_SADDLE = {"euler_char": 2, "angles": [{"value": "3/2", "saddle": True}, {"value": "1/2"}]}
ROUND = {"euler_char": 2, "angles": [{"value": "1"}, {"value": "1"}]}


def run(*argv):
    out = io.StringIO()
    code = cli.main([str(a) for a in argv], out=out)
    return code, out.getvalue()


@pytest.fixture
def problem_file(tmp_path):
    def make(doc, name="problem.json"):
        path = tmp_path / name
        path.write_text(json.dumps(doc) if not isinstance(doc, str) else doc)
        return path
    return make


def read_csv(path):
    with open(path) as fh:
        rows = list(csv.reader(fh))
    return np.array(rows[1:], dtype=float)


# ---------------------------------------------------------------- check


def test_check_admissible(problem_file):
    code, out = run("check", "--input", problem_file(SMALL_ANGLES))
    assert code == 0
    assert "Admissible" in out and "s=1" in out
    assert "= 2 + (2) - 3 = 1" in out


def test_check_inadmissible_prints_value_and_reason(problem_file):
    code, out = run("check", "--input", problem_file(GENUS_TWO))
    assert code == 2
    assert "Inadmissible" in out and "= 1" in out
    assert "not sufficient for chi <= 0" in out


def test_check_malformed_saddle(problem_file, capsys):
    code, out = run("check", "--input", problem_file(HALF_SADDLE))
    assert code == 1
    assert "saddle angles must be integers ≥ 2" in out + capsys.readouterr().err


def test_check_parse_error_positioned(problem_file, capsys):
    code, _ = run("check", "--input", problem_file('{"euler_char": 2,\n "angles": [oops]}'))
    assert code == 1
    assert "problem.json:2:13" in capsys.readouterr().err


def test_check_missing_file(tmp_path, capsys):
    assert run("check", "--input", tmp_path / "nope.json")[0] == 1
    assert "cannot read" in capsys.readouterr().err


def test_check_json(problem_file):
    code, out = run("check", "--input", problem_file(SMALL_ANGLES), "--json")
    doc = json.loads(out)
    assert code == 0 and doc["status"] == "admissible" and doc["s"] == "1"


def test_check_single_football(problem_file):
    code, out = run("check", "--input", problem_file(ROUND))
    assert code == 0 and "single football" in out


# ---------------------------------------------------------------- build


def test_build_small_angles(problem_file, tmp_path):
    out_dir = tmp_path / "out"
    code, out = run("build", "--input", problem_file(SMALL_ANGLES), "--out", out_dir)
    assert code == 0, out
    assert sorted(p.name for p in (out_dir / "profiles").iterdir()) == [
        "football_0.csv", "football_1.csv"]
    dot = (out_dir / "graph.dot").read_text()
    assert dot.count("shape=diamond") == 1 and "saddle\\n4π" in dot
    report = json.loads((out_dir / "report.json").read_text())
    assert report["plan"]["x"] == ["1/2", "1"] and report["plan"]["y"] == ["1/9", "2/9"]
    assert report["verification"]["overall"] is True
    assert (out_dir / "figures" / "profiles.png").stat().st_size > 0
    assert (out_dir / "figures" / "residuals.png").stat().st_size > 0
    table = read_csv(out_dir / "profiles" / "football_0.csv")
    assert table.shape == (257, 3)


def test_build_round_sphere_fast_path(problem_file, tmp_path):
    out_dir = tmp_path / "out"
    code, _ = run("build", "--input", problem_file(ROUND), "--out", out_dir, "--no-plots")
    assert code == 0
    assert [p.name for p in (out_dir / "profiles").iterdir()] == ["football_0.csv"]
    u, k, f = read_csv(out_dir / "profiles" / "football_0.csv").T
    assert np.max(np.abs(f - np.sin(u))) <= 1e-12 and np.all(k == 1.0)
    assert not (out_dir / "figures").exists()


def test_build_scale_covariance(problem_file, tmp_path):
    big = dict(SMALL_ANGLES, base_area=repr(16 * math.pi))
    run("build", "--input", problem_file(SMALL_ANGLES, "a.json"), "--out", tmp_path / "a",
        "--no-plots")
    code, _ = run("build", "--input", problem_file(big, "b.json"), "--out", tmp_path / "b",
                  "--no-plots")
    assert code == 0
    for k in (0, 1):
        ka = read_csv(tmp_path / "a" / "profiles" / f"football_{k}.csv")[:, 1]
        kb = read_csv(tmp_path / "b" / "profiles" / f"football_{k}.csv")[:, 1]
        assert np.all(kb == ka / 4)


def test_build_base_area_flag_overrides_file(problem_file, tmp_path):
    code, _ = run("build", "--input", problem_file(SMALL_ANGLES), "--out", tmp_path / "o",
                  "--base-area", repr(16 * math.pi), "--no-plots", "--samples", "65")
    assert code == 0
    report = json.loads((tmp_path / "o" / "report.json").read_text())
    assert float(report["problem"]["base_area"]) == 16 * math.pi
    assert report["problem"]["samples"] == 65


def test_build_inadmissible_still_reports(problem_file, tmp_path):
    out_dir = tmp_path / "out"
    code, _ = run("build", "--input", problem_file(GENUS_TWO), "--out", out_dir)
    assert code == 2
    report = json.loads((out_dir / "report.json").read_text())
    assert report["verdict"]["status"] == "inadmissible"
    assert report["verdict"]["condition_value"] == "1"
    assert not (out_dir / "graph.json").exists()


def test_build_malformed_still_reports(problem_file, tmp_path):
    out_dir = tmp_path / "out"
    assert run("build", "--input", problem_file(HALF_SADDLE), "--out", out_dir)[0] == 1
    assert json.loads((out_dir / "report.json").read_text())["verdict"]["status"] == "malformed"
    assert run("build", "--input", problem_file("{"), "--out", tmp_path / "o2")[0] == 1
    assert json.loads((tmp_path / "o2" / "report.json").read_text())["verdict"]["status"] \
        == "malformed"


def test_build_unwritable_directory(problem_file, tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("")
    code, _ = run("build", "--input", problem_file(SMALL_ANGLES), "--out", blocker / "sub")
    assert code == 4


def test_build_serialization_failure(problem_file, tmp_path, monkeypatch):
    def boom(_graph):
        raise TypeError("cannot encode")
    monkeypatch.setattr(pipeline, "graph_to_dict", boom)
    code, _ = run("build", "--input", problem_file(SMALL_ANGLES), "--out", tmp_path / "o")
    assert code == 5


def test_build_verification_failure_exit(problem_file, tmp_path):
    code, out = run("build", "--input", problem_file(SMALL_ANGLES), "--out", tmp_path / "o",
                    "--tol", "fd_constant=1e-9", "--no-plots")
    assert code == 3 and "FAIL" in out.upper()


def test_build_is_deterministic(problem_file, tmp_path):
    path = problem_file(SMALL_ANGLES)
    for name in ("a", "b"):
        assert run("build", "--input", path, "--out", tmp_path / name, "--no-plots")[0] == 0
    for rel in ("report.json", "graph.json", "graph.dot", "profiles/football_1.csv"):
        assert (tmp_path / "a" / rel).read_bytes() == (tmp_path / "b" / rel).read_bytes()


def test_unknown_tolerance_rejected(problem_file, tmp_path):
    with pytest.raises(SystemExit):
        run("build", "--input", problem_file(SMALL_ANGLES), "--out", tmp_path, "--tol", "foo=1")


# ---------------------------------------------------------------- verify


@pytest.fixture
def built(problem_file, tmp_path):
    out_dir = tmp_path / "built"
    assert run("build", "--input", problem_file(SMALL_ANGLES), "--out", out_dir,
               "--no-plots")[0] == 0
    return out_dir


def test_verify_fresh_build(built):
    code, out = run("verify", "--out", built)
    assert code == 0 and "all checks passed" in out
    assert "assembly.index_formula" in out


def test_verify_edited_row_names_failed_check(built):
    path = built / "profiles" / "football_0.csv"
    lines = path.read_text().splitlines()
    row = lines[100].split(",")
    row[2] = repr(float(row[2]) + 1e-3)
    lines[100] = ",".join(row)
    path.write_text("\n".join(lines) + "\n")
    code, out = run("verify", "--out", built)
    assert code == 3
    assert "failed checks: football[0]." in out


def test_verify_edited_area_in_graph(built):
    doc = json.loads((built / "graph.json").read_text())
    doc["footballs"][1]["area"] = repr(float(doc["footballs"][1]["area"]) * 1.01)
    (built / "graph.json").write_text(json.dumps(doc))
    code, out = run("verify", "--out", built, "--json")
    failed = {c["name"] for c in json.loads(out)["checks"] if not c["passed"]}
    assert code == 3
    assert "assembly.gluing_compatibility" in failed and "assembly.shared_k_max" in failed


def test_verify_missing_directory(tmp_path, capsys):
    assert run("verify", "--out", tmp_path / "none")[0] == 1
    assert "graph.json" in capsys.readouterr().err


def test_verify_corrupt_artifacts_reported_per_file(built, capsys):
    (built / "profiles" / "football_1.csv").write_text("u,K,f\n0,1\n")
    (built / "report.json").write_text("{")
    assert run("verify", "--out", built)[0] == 1
    err = capsys.readouterr().err
    assert "football_1.csv:2" in err and "report.json" in err


def test_verify_tolerance_override(built):
    assert run("verify", "--out", built, "--tol", "fd_constant=1e-9")[0] == 3


def test_verify_hand_authored_two_minima(tmp_path, capsys):
    shutil.copytree(DATA / "two_minima", tmp_path / "fig")
    code, out = run("verify", "--out", tmp_path / "fig")
    assert code == 0
    assert "assembly.gluing_compatibility" in out
    assert "recomputed" in capsys.readouterr().err


@pytest.mark.parametrize("doc", [
    SMALL_ANGLES,
    ROUND,
    {"euler_char": 2, "angles": [{"value": "3", "saddle": True}, {"value": "2", "saddle": True},
                                 {"value": "3/4"}, {"value": "0.4"}]},
    {"euler_char": 2, "angles": [{"value": "2", "saddle": True}, {"value": "2", "saddle": True}]},
    {"euler_char": 2, "angles": [{"value": "2", "saddle": True}, {"value": "7/2"}]},
])
def test_build_then_verify_round_trip(problem_file, tmp_path, doc):
    out_dir = tmp_path / "rt"
    assert run("build", "--input", problem_file(doc), "--out", out_dir, "--no-plots")[0] == 0
    assert run("verify", "--out", out_dir)[0] == 0


def test_module_entry_point(problem_file):
    import subprocess
    import sys

    res = subprocess.run([sys.executable, "-m", "hcmu", "check", "--input",
                          str(problem_file(SMALL_ANGLES))], capture_output=True, text=True)
    assert res.returncode == 0 and "s=1" in res.stdout
