import json
import shutil
import subprocess
import sys

import pytest

from stmodkit import cli
from stmodkit.errors import InvariantViolation
from stmodkit.io import write_module
from stmodkit.module import free_module, simple_module


@pytest.fixture
def files(tmp_path, A, B):
    paths = {}
    for name, m in {
        "k": simple_module(A, "k"),
        "eps": simple_module(A, "ε"),
        "pk": free_module(A, ["k"]),
        "omega": simple_module(B, "ω"),
    }.items():
        paths[name] = tmp_path / f"{name}.json"
        write_module(m, paths[name])
    return paths


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze(capsys, files):
    code, out, _ = run(capsys, "analyze", "--in", files["pk"])
    rep = json.loads(out)
    assert code == 0
    assert rep["loewy_length"] == 5 and rep["d"] == 0 and rep["projective_summands"] == {"P_k": 1}
    assert list(rep) == sorted(rep)


def test_cohomology_window_and_range(capsys, files, monkeypatch):
    code, out, _ = run(capsys, "cohomology", "--in", files["k"])
    assert code == 0 and json.loads(out)["dims"] == [3, 3, 2, 1, 1, 1, 1, 1, 1, 2, 3, 3, 3]
    monkeypatch.setenv("STMODKIT_WINDOW", "5")
    _, out, _ = run(capsys, "cohomology", "--in", files["k"])
    assert json.loads(out)["range"] == [-2, 2]
    _, out, _ = run(capsys, "cohomology", "--in", files["k"], "--window", "3")
    assert json.loads(out)["range"] == [-1, 1]
    _, out, _ = run(capsys, "cohomology", "--in", files["k"], "--range", "-3..-1")
    assert json.loads(out) == {"dims": [1, 1, 1], "module_id": "k", "range": [-3, -1]}


def test_filtrate_writes_file(capsys, files, tmp_path):
    out = tmp_path / "f.json"
    code, _, _ = run(capsys, "filtrate", "--in", files["omega"], "--out", out)
    rep = json.loads(out.read_text(encoding="utf-8"))
    assert code == 0 and rep["verification"]["passed"] and rep["d_core"] == 1


def test_decompose_and_duality(capsys, files):
    code, out, _ = run(capsys, "decompose", "--in", files["pk"])
    assert code == 0 and json.loads(out)["restriction"]["summands"] == {"P_k": 3}
    code, out, _ = run(capsys, "duality", "--in", files["k"], "--in", files["eps"], "--range", "-1..1")
    assert code == 0 and json.loads(out)["passed"]


def test_randomgen_deterministic(capsys):
    a = run(capsys, "randomgen", "--case", "B", "--seed", "7", "--max-dim", "12")
    b = run(capsys, "randomgen", "--case", "B", "--seed", "7", "--max-dim", "12")
    assert a[0] == 0 and a[1] == b[1]


def test_diagram_formats(capsys, files):
    _, dot, _ = run(capsys, "diagram", "--in", files["pk"])
    assert dot.startswith("digraph")
    _, art, _ = run(capsys, "diagram", "--in", files["pk"], "--format", "ascii")
    assert art.splitlines()[0].strip() == "k"


@pytest.mark.parametrize(
    "argv,kind",
    [
        (["frobnicate"], "UsageError"),
        (["analyze"], "UsageError"),
        (["analyze", "--in", "/nonexistent.json"], "UsageError"),
        (["cohomology", "--in", "K", "--range", "3..1"], "UsageError"),
        (["duality", "--in", "K"], "UsageError"),
        (["filtrate", "--in", "K", "--window", "0"], "UsageError"),
        (["randomgen", "--case", "Q"], "UsageError"),
    ],
)
def test_invalid_input_exits_1(capsys, files, argv, kind):
    argv = [str(files["k"]) if a == "K" else a for a in argv]
    code, _, err = run(capsys, *argv)
    assert code == 1
    assert json.loads(err)["error"] == kind


def test_relation_violation_exits_1(capsys, tmp_path, files):
    doc = json.loads(files["pk"].read_text(encoding="utf-8"))
    doc["action"]["Z"] = [[1 if i == j else 0 for j in range(9)] for i in range(9)]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc), encoding="utf-8")
    code, _, err = run(capsys, "analyze", "--in", bad)
    diag = json.loads(err)
    assert code == 1 and diag["error"] == "InvalidModule" and "Z^3=0" in diag["violations"]


def test_invariant_violation_exits_2(capsys, files, monkeypatch):
    import stmodkit.solver as solver

    def broken(m, config=None):
        raise InvariantViolation("step5", "forced")

    monkeypatch.setattr(solver, "solve", broken)
    code, _, err = run(capsys, "filtrate", "--in", files["k"])
    assert code == 2 and json.loads(err)["error"] == "InvariantViolation"


def test_selftest_subset(capsys, tmp_path):
    out = tmp_path / "self.json"
    code, text, _ = run(capsys, "selftest", "--only", "1,5", "--out", out)
    assert code == 0
    assert text.count("[PASS]") == 2
    assert json.loads(out.read_text(encoding="utf-8"))["passed"]


@pytest.mark.skipif(shutil.which("stmodkit") is None, reason="console script not installed")
def test_console_script_pipes(files):
    gen = subprocess.run(["stmodkit", "randomgen", "--pieces", "ε,P_ε", "--seed", "1"], capture_output=True, check=True)
    res = subprocess.run(["stmodkit", "analyze", "--in", "/dev/stdin"], input=gen.stdout, capture_output=True)
    assert res.returncode == 0, res.stderr
    assert json.loads(res.stdout)["dim"] == 10


def test_module_entry_point(files):
    res = subprocess.run([sys.executable, "-m", "stmodkit.cli", "analyze", "--in", str(files["k"])], capture_output=True)
    assert res.returncode == 0 and json.loads(res.stdout)["dim"] == 1
