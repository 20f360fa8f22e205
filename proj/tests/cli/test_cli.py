import csv
import json
import os
import subprocess

import pytest

BIN = os.environ.get("HOLEPERC_BIN", "holeperc")
HEADER = "quantity,d,n,p,value,std_error,replicates,seed,proxy_notes"


def run(*args, env=None):
    full_env = dict(os.environ)
    if env:
        full_env.update(env)
    return subprocess.run([BIN, *map(str, args)], capture_output=True, text=True, env=full_env)


def rows(text):
    lines = text.splitlines()
    assert lines[0].startswith("# holeperc format_version=1 ")
    assert lines[1] == HEADER
    return list(csv.DictReader(lines[1:]))


def test_theta_hole_supercritical(tmp_path):
    out = tmp_path / "r.csv"
    res = run("estimate", "--quantity", "theta_hole", "--d", 2, "--n", 32, "--p", 0.55, "--reps", 2000,
              "--seed", 7, "--out", out)
    assert res.returncode == 0, res.stderr
    text = out.read_text()
    assert "seed=7" in text.splitlines()[0]
    (row,) = rows(text)
    assert row["quantity"] == "theta_hole"
    assert float(row["value"]) > 0.8


def test_trivial_values():
    res = run("estimate", "--quantity", "kappa", "--d", 2, "--n", 32, "--dual-p", 0, "--reps", 5)
    assert res.returncode == 0
    assert float(rows(res.stdout)[0]["value"]) == 1.0
    res = run("estimate", "--quantity", "vertex_density", "--d", 2, "--n", 4, "--p", 1, "--reps", 5)
    assert float(rows(res.stdout)[0]["value"]) == 1.0


def test_several_quantities_and_json():
    res = run("estimate", "--quantity", "theta_face,avg_hole_size", "--n", 6, "--p", 0.7, "--reps", 20,
              "--format", "json")
    assert res.returncode == 0
    doc = json.loads(res.stdout)
    assert doc["header"]["format_version"] == 1
    assert [r["quantity"] for r in doc["reports"]] == ["theta_face", "avg_hole_size"]


def test_output_independent_of_jobs():
    args = ("estimate", "--quantity", "theta_hole,spanning_hole_clusters", "--n", 8, "--p", 0.6, "--reps", 40)
    one = run(*args, "--jobs", 1).stdout
    four = run(*args, "--jobs", 4).stdout
    env = run(*args, env={"HOLEPERC_JOBS": "3"}).stdout
    assert one == four == env


@pytest.mark.parametrize(
    "args",
    [
        ("estimate", "--quantity", "nonsense"),
        ("estimate",),
        ("estimate", "--quantity", "kappa", "--x", "1,2"),
        ("estimate", "--quantity", "theta_hole", "--dual-p", 0.3),
        ("estimate", "--quantity", "two_point_hole"),
        ("estimate", "--quantity", "two_point_hole", "--y", "1,2,3"),
        ("estimate", "--quantity", "pc_estimate"),
        ("estimate", "--quantity", "theta_hole", "--p", 1.5),
        ("estimate", "--quantity", "theta_hole", "--format", "svg"),
        ("render", "--d", 3),
        ("sweep", "--n-list", "8,4"),
        ("frobnicate",),
        (),
    ],
)
def test_usage_errors(args):
    assert run(*args).returncode == 2


def test_config_file_defaults(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# recipe\nn = 6\np = 0.7\nreps = 25\nseed = 4\n")
    res = run("estimate", "--config", cfg, "--quantity", "theta_hole", "--p", 0.6)
    assert res.returncode == 0, res.stderr
    row = rows(res.stdout)[0]
    assert (row["n"], row["p"], row["replicates"], row["seed"]) == ("6", "0.6", "25", "4")
    cfg.write_text("bogus = 1\n")
    assert run("estimate", "--config", cfg, "--quantity", "theta_hole").returncode == 2


def test_verify_passes_and_fault_is_caught():
    ok = run("verify", "--d", 2, "--max-n", 3, "--seeds", 50)
    assert ok.returncode == 0, ok.stdout
    assert "all checks passed" in ok.stdout
    bad = run("verify", "--d", 2, "--max-n", 3, "--seeds", 50, "--inject-fault")
    assert bad.returncode == 1
    assert "reproduce: holeperc verify" in bad.stdout
    assert "seed=" in bad.stdout


def test_sweep_outputs(tmp_path):
    out = tmp_path / "s.csv"
    res = run("sweep", "--d", 2, "--n-list", "4,8", "--p-step", 0.25, "--reps", 20, "--check-stride", 5,
              "--out", out)
    assert res.returncode == 0, res.stderr
    data = rows(out.read_text())
    assert len(data) == 3 * 2 * 5 + 3
    assert {r["quantity"] for r in data} == {"span_hole", "span_face", "span_bond", "pc_estimate"}


def test_snapshot_and_render(tmp_path):
    snap = tmp_path / "c.bin"
    assert run("snapshot", "save", "--d", 2, "--n", 3, "--p", 0.6, "--seed", 4, "--out", snap).returncode == 0
    summary = run("snapshot", "load", "--in", snap).stdout
    assert "holes " in summary and "seed 4" in summary
    adjacency = run("snapshot", "load", "--in", snap, "--export", "adjacency").stdout
    graph = json.loads(run("snapshot", "load", "--in", snap, "--export", "json").stdout)
    assert len(adjacency.splitlines()) == graph["hole_count"]
    a = run("render", "--snapshot", snap).stdout
    b = run("render", "--snapshot", snap).stdout
    assert a == b and a.startswith("<?xml")
    assert run("snapshot", "load", "--in", tmp_path / "missing.bin").returncode == 2
    snap3 = tmp_path / "c3.bin"
    run("snapshot", "save", "--d", 3, "--n", 2, "--out", snap3)
    assert run("render", "--snapshot", snap3).returncode == 2


def test_render_unit_square_and_full_window():
    full = run("render", "--d", 2, "--n", 2, "--p", 1).stdout
    assert full.count("<circle") == 16
