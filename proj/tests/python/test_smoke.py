import json

import pytest

import holeperc


def test_window_counts():
    w = holeperc.Window(2, 3)
    assert (w.d, w.n) == (2, 3)
    assert w.num_dual_vertices == 36
    assert w.num_faces == 2 * 7 * 6
    with pytest.raises(ValueError):
        holeperc.Window(1, 3)


def test_extremes():
    full = holeperc.sample_configuration(2, 3, 1.0, seed=4)
    assert full.open_count == full.window.num_faces
    assert len(full.holes()) == full.window.num_dual_vertices
    assert full.betti() == full.window.num_dual_vertices
    empty = holeperc.sample_configuration(2, 3, 0.0)
    assert empty.holes() == []
    assert empty.spanning_hole_clusters() == 0


def test_hole_count_matches_betti():
    for seed in range(20):
        cfg = holeperc.sample_configuration(3, 2, 0.6, seed=seed)
        assert len(cfg.holes()) == cfg.betti()


def test_snapshot_round_trip(tmp_path):
    cfg = holeperc.sample_configuration(2, 4, 0.55, seed=9, rep=2)
    path = tmp_path / "cfg.bin"
    cfg.save(str(path))
    back = holeperc.load_snapshot(str(path))
    assert back == cfg
    assert back.p == 0.55
    assert back.seed == 9
    assert holeperc.from_bytes(cfg.to_bytes()) == cfg


def test_estimates():
    r = holeperc.estimate("vertex_density", d=2, n=4, p=1.0, reps=5)
    assert r["value"] == 1.0
    assert r["quantity"] == "vertex_density"
    k = holeperc.estimate("kappa", d=2, n=8, dual_p=0.0, reps=5)
    assert k["value"] == 1.0
    a = holeperc.estimate("avg_hole_size", d=2, n=8, p=0.7, reps=20, seed=3)
    assert a["value"] >= 1.0
    assert "rhs" in a["extras"]
    tp = holeperc.estimate("two_point_hole", d=2, n=6, p=1.0, reps=3, y=[2, 1])
    assert tp["value"] == 1.0
    with pytest.raises(ValueError):
        holeperc.estimate("nonsense")
    with pytest.raises(ValueError):
        holeperc.estimate("pc_estimate")


def test_estimates_ignore_worker_count():
    a = holeperc.estimate("theta_hole", d=2, n=8, p=0.55, reps=30, seed=5, jobs=1)
    b = holeperc.estimate("theta_hole", d=2, n=8, p=0.55, reps=30, seed=5, jobs=3)
    assert a == b


def test_sweep_and_verify():
    s = holeperc.sweep(d=2, n_list=[4, 8], p_step=0.1, reps=30, check_stride=10)
    assert len(s["p_grid"]) == 11
    for kind in ("hole", "face", "bond"):
        for curve in s[kind]["prob"]:
            assert curve[0] == 0.0 and curve[-1] == 1.0
            assert all(a <= b for a, b in zip(curve, curve[1:]))
    v = holeperc.verify(dims=[2], max_n=2, seeds=10)
    assert v["ok"]
    bad = holeperc.verify(dims=[2], max_n=2, seeds=10, inject_fault=True)
    assert not bad["ok"]
    assert bad["failures"][0].startswith("check=")


def test_render_and_summary():
    cfg = holeperc.sample_configuration(2, 3, 0.6, seed=2)
    svg = cfg.render_svg()
    assert svg.startswith("<?xml")
    assert svg == cfg.render_svg()
    summary = json.loads(cfg.hole_graph_summary())
    assert summary["hole_count"] == len(cfg.holes())
    with pytest.raises(ValueError):
        holeperc.sample_configuration(3, 2, 0.6).render_svg()
