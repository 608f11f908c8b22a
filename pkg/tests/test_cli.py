import json
import subprocess
import sys

import pytest

from dehnforge.cli import main
from dehnforge.fixtures import FIXTURES


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, (json.loads(out.out) if out.out.strip() else None), out.err


def test_report_shape(capsys):
    code, rep, _ = run(capsys, "twist", "maslov", "--c", "2")
    assert code == 0
    assert set(rep) == {"suite", "seed", "cases", "pass", "result"}
    assert rep["result"] == {"loop": 3, "section": 1}
    for row in rep["cases"]:
        assert set(row) == {"case_id", "inputs_digest", "metric", "tolerance", "pass", "property"}
        assert len(row["inputs_digest"]) == 16 and row["property"]
    assert [r["case_id"] for r in rep["cases"]] == sorted(r["case_id"] for r in rep["cases"])


@pytest.mark.parametrize("fixture", ["cone-identity", "split-double-cone"])
def test_homalg_fixtures(capsys, fixture):
    sub = "verify" if fixture == "cone-identity" else "doublecone"
    code, rep, _ = run(capsys, "homalg", sub, "--fixture", fixture)
    assert code == 0 and rep["pass"]


def test_cone_identity_is_acyclic(capsys, tmp_path):
    path = tmp_path / "cone.json"
    path.write_text(json.dumps(FIXTURES["cone-identity"]()))
    code, rep, _ = run(capsys, "homalg", "cone", str(path))
    assert code == 0
    assert not any(rep["result"]["cohomology"]["integer-at-q1"]["ranks"].values())


def test_doubling_reports_failed_hypothesis(capsys):
    code, rep, _ = run(capsys, "homalg", "doublecone", "--fixture", "doubling-double-cone")
    assert code == 0
    assert rep["result"]["hypotheses_hold"] is False


def test_mf(capsys):
    code, rep, _ = run(capsys, "homalg", "mf", "--fixture", "mf-1-2")
    assert code == 0 and rep["result"]["cohomology"] == {"0": [], "1": []}


def test_random_double_cones(capsys):
    code, rep, _ = run(capsys, "homalg", "doublecone", "--random", "10", "--seed", "7")
    assert code == 0 and rep["result"] == {"acyclic": 10, "instances": 10}


def test_check_failure_exits_one(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"C0_rank": 1, "C1_rank": 1, "d0": [[2]], "d1": [[2]], "w": 2}))
    code, rep, _ = run(capsys, "homalg", "mf", str(path))
    assert code == 1 and rep["pass"] is False


@pytest.mark.parametrize("argv", [
    ["homalg", "verify"],
    ["homalg", "verify", "/nonexistent.json"],
    ["homalg", "verify", "--fixture", "nope"],
    ["twist", "symp", "--c", "7"],
    ["twist", "symp", "--eps", "-1"],
    ["repvar", "solve", "--labels", "1/4,x"],
    ["repvar", "solve", "--labels", "3/4"],
    ["repvar", "kr", "--r", "3", "--k", "2"],
    ["pl", "--fixture", "nope"],
])
def test_input_errors_exit_two(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and "error" in err


def test_twist_suites(capsys):
    for sub in ("symp", "antipodal", "equivariance", "intersections"):
        code, rep, _ = run(capsys, "twist", sub, "--c", "1", "--samples", "10", "--seed", "3")
        assert code == 0 and rep["pass"], sub


def test_repvar(capsys):
    code, rep, _ = run(capsys, "repvar", "dim", "--labels", "1/4,1/4,1/4,1/4,1/4", "--samples", "3")
    assert code == 0 and rep["result"]["dimensions"] == [4, 4, 4]
    code, rep, _ = run(capsys, "repvar", "orbit", "--labels", "1/4,1/4,1/4,1/4", "--braid", "1 2 1",
                       "--vs", "2 1 2")
    assert code == 0 and rep["result"]["distance"] < 1e-12
    code, rep, _ = run(capsys, "repvar", "fibers")
    assert rep["result"] == {"separating-generic": 1, "nonseparating-central": 3, "halftwist-pair": 2}
    code, rep, _ = run(capsys, "repvar", "kr", "--r", "2", "--k", "0")
    assert rep["result"]["su2"] == {"nu1": "1/4", "nu2": "0"}


def test_repvar_no_solution_exits_one(capsys):
    code, _, err = run(capsys, "repvar", "solve", "--labels", "0,1/4")
    assert code == 1 and "no solution" in err


def test_solve_from_instance(capsys, tmp_path):
    path = tmp_path / "inst.json"
    path.write_text(json.dumps({"labels": [{"num": 1, "den": 4}] * 3, "target": "+I", "seed": 5}))
    code, rep, _ = run(capsys, "repvar", "solve", str(path))
    assert code == 0 and rep["seed"] == 5 and float(rep["result"]["residual"]) < 1e-10


def test_pl(capsys):
    code, rep, _ = run(capsys, "pl", "--fixture", "torus")
    assert code == 0 and rep["result"]["monodromy"]["blocks"]["1"] == [[1, 1], [0, 1]]
    code, rep, _ = run(capsys, "pl", "--signs")
    assert rep["result"]["signs"] == "-++--++-"


def test_out_file_and_determinism(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        assert main(["twist", "symp", "--c", "2", "--samples", "5", "--seed", "11", "--out", str(path)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert capsys.readouterr().out == ""


def test_accept_is_byte_identical(tmp_path):
    # criterion lines go to stderr; reports must not depend on timing
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for i, path in enumerate(paths):
        env_threads = "1" if i == 0 else "4"
        proc = subprocess.run([sys.executable, "-m", "dehnforge.cli", "accept", "--seed", "2", "--out", str(path)],
                              capture_output=True, text=True, env={"DEHNFORGE_THREADS": env_threads,
                                                                   "PATH": "/usr/bin:/bin"})
        assert proc.returncode == 0, proc.stderr
        assert proc.stderr.count("[PASS]") == 12
    assert paths[0].read_bytes() == paths[1].read_bytes()
