import csv
import io
import json
import shutil
import subprocess

import pytest

from grassorth.cli import main
from grassorth.grassmannian import chart_from_json, chart_point, in_shilov, is_orthogonal
from grassorth.maps import standard_embedding
from grassorth.scalars import GaussianRational


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


@pytest.mark.parametrize("args,tag", [
    (("--s", "2", "--rp", "2", "--sp", "3"), "LinearRigid"),
    (("--s", "3", "--rp", "2", "--sp", "3"), "Constant"),
    (("--s", "2", "--rp", "2", "--sp", "4"), "NoRigidity"),
])
def test_regime(capsys, args, tag):
    code, out = run(capsys, "regime", *args)
    assert code == 0 and json.loads(out)["tag"] == tag


def test_regime_csv(capsys):
    code, out = run(capsys, "regime", "--s", "2", "--rp", "2", "--sp", "3", "--format", "csv")
    (row,) = list(csv.DictReader(io.StringIO(out)))
    assert row["tag"] == "LinearRigid" and row["bounds"] == "[1, 2]"


def test_bad_arguments_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["regime", "--s", "two", "--rp", "2", "--sp", "3"])
    assert exc.value.code == 2
    assert main(["check"]) == 2
    assert main(["check", "--builtin", "standard", "--s", "3", "--rp", "2", "--sp", "3"]) == 2


def test_check_builtins_pass(capsys):
    code, out = run(capsys, "check", "--builtin", "standard", "--s", "2", "--rp", "2", "--sp", "3",
                    "--mode", "exact", "--samples", "200", "--trials", "20")
    rep = json.loads(out)
    assert code == 0 and rep["passed"] and [r["check"] for r in rep["reports"]] == [
        "null_preservation", "orthogonality_preservation", "orthogonality_pit"]
    code, _ = run(capsys, "check", "--builtin", "whitney", "--s", "2", "--rp", "2", "--samples", "200")
    assert code == 0


def test_check_perturbed_file_fails(capsys, tmp_path):
    F = standard_embedding(2, 2, 3).perturb(1, 1, (1, 0), GaussianRational(1, 0) / 100)
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(F.to_json()))
    code, out = run(capsys, "check", str(path), "--samples", "200")
    rep = json.loads(out)
    assert code == 1 and not rep["passed"]
    assert any(r["failures"] for r in rep["reports"])


def test_check_malformed_file(capsys, tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{"src": [1, 2], "tgt": [2]}')
    assert main(["check", str(path)]) == 2
    path.write_text("not json")
    assert main(["check", str(path)]) == 2


@pytest.mark.parametrize("argv,classification", [
    (("--builtin", "standard", "--s", "2", "--rp", "2", "--sp", "3"), "StandardLinear"),
    (("--builtin", "constant", "--s", "2", "--rp", "2", "--sp", "3"), "Constant"),
    (("--builtin", "whitney", "--s", "2", "--rp", "2"), "Other"),
])
def test_analyze(capsys, argv, classification):
    code, out = run(capsys, "analyze", *argv)
    rep = json.loads(out)
    assert code == 0 and rep["classification"] == classification
    if classification == "Other":
        assert rep["regime"]["tag"] == "NoRigidity"


def test_sample_shilov(capsys):
    code, out = run(capsys, "sample", "shilov", "--r", "2", "--s", "3", "--n", "5", "--seed", "7")
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) == 5
    for line in lines:
        assert in_shilov(chart_from_json(json.loads(line)), 1e-10)


def test_sample_pair(capsys):
    code, out = run(capsys, "sample", "pair", "--s", "3", "--n", "5")
    lines = [json.loads(x) for x in out.strip().splitlines()]
    assert code == 0 and len(lines) == 5
    for obj in lines:
        z, w = chart_from_json(obj["z"]), chart_from_json(obj["w"])
        assert is_orthogonal(chart_point(z), chart_point(w), 1e-9)


def test_sample_frame(capsys):
    code, out = run(capsys, "sample", "frame", "--s", "2", "--n", "1")
    (obj,) = [json.loads(x) for x in out.strip().splitlines()]
    pts = [chart_from_json(p) for p in obj["points"]]
    assert code == 0 and len(pts) == 3
    for i in range(3):
        for j in range(i + 1, 3):
            assert is_orthogonal(chart_point(pts[i]), chart_point(pts[j]), 1e-9)


def test_output_is_deterministic(capsys):
    argv = ["analyze", "--builtin", "standard", "--s", "3", "--rp", "2", "--sp", "4", "--seed", "42"]
    assert run(capsys, *argv) == run(capsys, *argv)
    argv = ["sample", "pair", "--s", "4", "--n", "3", "--seed", "42"]
    assert run(capsys, *argv) == run(capsys, *argv)


def test_seed_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("GRASSORTH_SEED", "123")
    _, from_env = run(capsys, "sample", "pair", "--s", "2")
    monkeypatch.delenv("GRASSORTH_SEED")
    _, explicit = run(capsys, "sample", "pair", "--s", "2", "--seed", "123")
    _, default = run(capsys, "sample", "pair", "--s", "2")
    assert from_env == explicit != default


def test_out_file(capsys, tmp_path):
    path = tmp_path / "r.json"
    code, out = run(capsys, "regime", "--s", "2", "--rp", "2", "--sp", "3", "--out", str(path))
    assert code == 0 and out == "" and json.loads(path.read_text())["tag"] == "LinearRigid"


def test_demo(capsys):
    code, out = run(capsys, "demo")
    rep = json.loads(out)
    assert code == 0
    assert [m["classification"] for m in rep["maps"]] == ["StandardLinear", "Other", "Constant"]
    assert all(m["checks_passed"] for m in rep["maps"])


@pytest.mark.skipif(shutil.which("grassorth") is None, reason="console script not installed")
def test_console_script_byte_identical():
    cmd = ["grassorth", "check", "--builtin", "whitney", "--s", "3", "--rp", "2", "--samples", "100", "--seed", "9"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a
