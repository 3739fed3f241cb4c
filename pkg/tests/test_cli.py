import json

import pytest

from wormdim.cli import main
from wormdim.pointio import read_point_set


def run_cli(*argv):
    return main(list(argv))


def test_simulate_walk_roundtrip(tmp_path):
    out = tmp_path / "walk.csv"
    assert run_cli("simulate", "walk", "--steps", "500", "--seed", "7",
                   "--out", str(out)) == 0
    points, meta = read_point_set(out)
    assert meta["model"] == "walk" and meta["n"] == "500"
    assert 1 <= len(points) <= 501
    assert (0, 0) in points


def test_simulate_walk_deterministic_bytes(tmp_path):
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    run_cli("simulate", "walk", "--steps", "300", "--seed", "9", "--out", str(a))
    run_cli("simulate", "walk", "--steps", "300", "--seed", "9", "--out", str(b))
    assert a.read_bytes() == b.read_bytes()


def test_simulate_earthworm_metadata(tmp_path):
    out = tmp_path / "worm.csv"
    assert run_cli("simulate", "earthworm", "--steps", "400", "--seed", "3",
                   "--out", str(out)) == 0
    points, meta = read_point_set(out)
    assert meta["model"] == "earthworm"
    assert len(points) == 1 + int(meta["creations"])


def test_frontier_command(tmp_path):
    trace = tmp_path / "trace.csv"
    front = tmp_path / "front.csv"
    run_cli("simulate", "walk", "--steps", "2000", "--seed", "1", "--out", str(trace))
    assert run_cli("frontier", "--in", str(trace), "--out", str(front)) == 0
    trace_points, _ = read_point_set(trace)
    frontier_points, meta = read_point_set(front)
    assert int(meta["trace_size"]) == len(trace_points)
    assert all(p in trace_points for p in frontier_points)


def test_batch_then_counting_dimension(tmp_path, capsys):
    outdir = tmp_path / "batch"
    assert run_cli("batch", "--model", "walk", "--schedule", "g:64:2:4",
                   "--replicates", "3", "--seed", "5", "--out", str(outdir)) == 0
    capsys.readouterr()
    fit_out = tmp_path / "fit.json"
    assert run_cli("dimension", "counting", "--records",
                   str(outdir / "records.csv"), "--out", str(fit_out)) == 0
    printed = json.loads(capsys.readouterr().out)
    stored = json.loads(fit_out.read_text())
    assert printed == stored
    assert stored["method"] == "counting"
    assert stored["h"] is not None and stored["d"] is not None


def test_dimension_averaging_and_profile(tmp_path, capsys):
    trace = tmp_path / "trace.csv"
    run_cli("simulate", "walk", "--steps", "20000", "--seed", "2", "--out", str(trace))
    capsys.readouterr()
    profile_out = tmp_path / "profile.csv"
    assert run_cli("dimension", "averaging", "--in", str(trace),
                   "--rmin", "2", "--rmax", "20", "--centers", "500",
                   "--seed", "1", "--profile-out", str(profile_out)) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["method"] == "averaging"
    assert payload["value"] > 0
    lines = profile_out.read_text().splitlines()
    assert lines[0] == "r,q_r"
    assert len(lines) > 2


def test_components_command(tmp_path, capsys):
    pts = tmp_path / "pts.csv"
    pts.write_text("0,0\n0,1\n5,5\n", encoding="utf-8")
    assert run_cli("components", "--in", str(pts)) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["component_count"] == 2
    assert payload["singleton_count"] == 1
    assert payload["size_histogram"] == {"1": 1, "2": 1}


def test_plot_data_from_profile(tmp_path, capsys):
    profile = tmp_path / "profile.csv"
    profile.write_text("r,q_r\n2,5.0\n4,20.0\n8,80.0\n", encoding="utf-8")
    out = tmp_path / "plots"
    assert run_cli("plot-data", "--profile", str(profile), "--out", str(out)) == 0
    assert (out / "scatter_qr.csv").exists()
    assert (out / "fitline_qr.csv").exists()
    fit = json.loads((out / "fit.json").read_text())
    assert fit["value"] == pytest.approx(2.0, abs=1e-9)


def test_plot_data_fit_only(tmp_path):
    profile = tmp_path / "profile.csv"
    profile.write_text("r,q_r\n2,5.0\n4,20.0\n8,80.0\n", encoding="utf-8")
    out1 = tmp_path / "p1"
    run_cli("plot-data", "--profile", str(profile), "--out", str(out1))
    out2 = tmp_path / "p2"
    assert run_cli("plot-data", "--fit", str(out1 / "fit.json"), "--out", str(out2)) == 0
    assert (out2 / "fitline_q_r.csv").exists()


def test_census_command(tmp_path, capsys):
    outdir = tmp_path / "batch"
    run_cli("batch", "--model", "earthworm", "--schedule", "g:32:2:2",
            "--replicates", "2", "--seed", "4", "--out", str(outdir))
    capsys.readouterr()
    assert run_cli("census", "--records", str(outdir / "records.csv")) == 0
    payload = json.loads(capsys.readouterr().out)
    assert [row["n"] for row in payload] == [32, 64]


def test_exit_code_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["batch", "--model", "nope", "--schedule", "g:1:2:3",
              "--replicates", "1", "--seed", "0", "--out", "x"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["batch", "--model", "walk", "--schedule", "garbage",
              "--replicates", "1", "--seed", "0", "--out", "x"])
    assert exc.value.code == 2


def test_exit_code_degenerate_input(tmp_path):
    records = tmp_path / "records.csv"
    records.write_text(
        "model,n,seed,set_size,diameter,component_count,singleton_count,elapsed_ms\n"
        "walk,64,1,50,8.0,,,\n"
        "walk,64,2,52,8.5,,,\n",
        encoding="utf-8",
    )
    # a single distinct n cannot support the counting fits
    assert run_cli("dimension", "counting", "--records", str(records)) == 3


def test_exit_code_io_error(tmp_path):
    missing = tmp_path / "missing.csv"
    assert run_cli("frontier", "--in", str(missing), "--out", str(tmp_path / "o.csv")) == 4


def test_exit_code_unwritable_output_dir(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("x", encoding="utf-8")
    # output dir nested under a regular file cannot be created
    assert run_cli("batch", "--model", "walk", "--schedule", "g:16:2:2",
                   "--replicates", "1", "--seed", "0",
                   "--out", str(blocker / "nested")) == 4


def test_plot_data_conflicting_sources_is_usage_error(tmp_path):
    profile = tmp_path / "profile.csv"
    profile.write_text("r,q_r\n2,5.0\n4,20.0\n", encoding="utf-8")
    assert run_cli("plot-data", "--profile", str(profile),
                   "--fit", str(profile), "--out", str(tmp_path / "o")) == 2


def test_exit_code_malformed_points(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("0,0\nnot-a-point\n", encoding="utf-8")
    assert run_cli("components", "--in", str(bad)) == 3
