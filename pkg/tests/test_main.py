""" Test main module.
"""
import sys
import json
from subprocess import check_call, run

import pandas as pd
import pytest

from mirw import constants

pytestmark = pytest.mark.main

MIRW_CMD = [sys.executable, "-m", "mirw.main"]


def run_mirw(*args):
    return run(
        MIRW_CMD + [str(arg) for arg in args], capture_output=True, text=True
    )


@pytest.mark.smoke
def test_help():
    check_call(MIRW_CMD + ["-h"])
    for cmd in ("stats", "bench", "sweep"):
        check_call(MIRW_CMD + [cmd, "-h"])


#########
# Stats #
#########


@pytest.mark.smoke
def test_stats_karate(karate_path, tmp_path):
    proc = run_mirw("stats", karate_path, "--out", tmp_path)
    assert proc.returncode == 0, proc.stderr
    lines = proc.stdout.splitlines()
    assert lines[1].startswith("karate 34 78 4.588")
    assert lines[2].startswith("reference 34 78 4.588")
    stats = pd.read_csv(tmp_path / constants.STATS_FILENAME)
    assert stats["edges"].tolist() == [78]
    assert stats["diameter"].tolist() == [5]


def test_stats_registry_name():
    proc = run_mirw("stats", "karate")
    assert proc.returncode == 0, proc.stderr
    assert "34 78 4.588" in proc.stdout


def test_stats_empty(tmp_path):
    empty_fn = tmp_path / "empty.edges"
    empty_fn.write_text("# nothing here\n")
    proc = run_mirw("stats", empty_fn)
    assert proc.returncode == 0, proc.stderr
    assert "empty 0 0 " in proc.stdout


def test_stats_missing(tmp_path):
    proc = run_mirw("stats", tmp_path / "missing.edges")
    assert proc.returncode == 2
    assert "missing.edges" in proc.stderr
    assert proc.stdout == ""


#########
# Bench #
#########


def test_bench(tmp_path):
    out_dir = tmp_path / "bench"
    proc = run_mirw(
        "bench",
        "karate",
        "--methods",
        "mirw,lrw",
        "--trials",
        "3",
        "--seed",
        "7",
        "--out",
        out_dir,
    )
    assert proc.returncode == 0, proc.stderr
    for fn in (
        constants.REPORT_FILENAME,
        constants.METRICS_FILENAME,
        constants.CONFIG_FILENAME,
        constants.LOG_FILENAME,
        "roc_mirw.csv",
        "roc_lrw.csv",
    ):
        assert (out_dir / fn).exists()
    report = json.loads((out_dir / constants.REPORT_FILENAME).read_text())
    assert report["config"]["seed"] == 7
    assert [agg["method"] for agg in report["aggregates"]] == ["mirw", "lrw"]
    assert "mirw" in proc.stdout and "lrw" in proc.stdout
    assert f"{report['aggregates'][0]['mean_auc']:.4f}" in proc.stdout


def test_bench_deterministic(tmp_path):
    outputs = []
    for out in ("first", "second"):
        proc = run_mirw(
            "bench",
            "karate",
            "--methods",
            "ra,srw,rwr",
            "--trials",
            "2",
            "--seed",
            "11",
            "--out",
            tmp_path / out,
        )
        assert proc.returncode == 0, proc.stderr
        outputs.append(
            (tmp_path / out / constants.METRICS_FILENAME).read_bytes()
        )
    assert outputs[0] == outputs[1]


def test_bench_all_methods(tmp_path):
    proc = run_mirw(
        "bench",
        "karate",
        "--methods",
        "all",
        "--trials",
        "1",
        "--seed",
        "1",
        "--quiet",
        "--out",
        tmp_path / "all",
    )
    assert proc.returncode == 0, proc.stderr
    metrics = pd.read_csv(tmp_path / "all" / constants.METRICS_FILENAME)
    assert metrics["method"].tolist() == list(constants.METHODS)


def test_bench_unknown_method(tmp_path):
    proc = run_mirw(
        "bench", "karate", "--methods", "mirw,katz", "--out", tmp_path / "x"
    )
    assert proc.returncode == 2
    assert "katz" in proc.stderr
    for method in constants.METHODS:
        assert method in proc.stderr


def test_bench_partial_failure(tmp_path):
    proc = run_mirw(
        "bench",
        "karate",
        "--methods",
        "ra,rwr",
        "--trials",
        "1",
        "--seed",
        "3",
        "--rwr-max-iter",
        "1",
        "--rwr-tol",
        "1e-12",
        "--out",
        tmp_path / "fail",
    )
    assert proc.returncode == 1
    report = json.loads(
        (tmp_path / "fail" / constants.REPORT_FILENAME).read_text()
    )
    assert not report["completed"]
    assert report["failures"][0]["method"] == "rwr"


def test_bench_refuses_existing_output(tmp_path):
    (tmp_path / "keep.txt").write_text("keep")
    args = ("bench", "karate", "--methods", "ra", "--trials", "1")
    proc = run_mirw(*args, "--out", tmp_path)
    assert proc.returncode == 2
    assert (tmp_path / "keep.txt").exists()
    proc = run_mirw(*args, "--out", tmp_path, "--overwrite")
    assert proc.returncode == 0, proc.stderr
    assert not (tmp_path / "keep.txt").exists()


def test_bench_sweep_t(tmp_path):
    proc = run_mirw(
        "bench",
        "karate",
        "--methods",
        "lrw,jc",
        "--trials",
        "1",
        "--sweep-t",
        "1-3",
        "--out",
        tmp_path / "sweep_t",
    )
    assert proc.returncode == 0, proc.stderr
    metrics = pd.read_csv(tmp_path / "sweep_t" / constants.METRICS_FILENAME)
    assert metrics.loc[metrics["method"] == "lrw", "t"].tolist() == [1, 2, 3]


def test_bench_influence_flags(tmp_path):
    out_dir = tmp_path / "influence"
    proc = run_mirw(
        "bench",
        "karate",
        "--methods",
        "mirw",
        "--trials",
        "1",
        "--cn-mode",
        "raw",
        "--influence-direction",
        "received",
        "--out",
        out_dir,
    )
    assert proc.returncode == 0, proc.stderr
    report = json.loads((out_dir / constants.REPORT_FILENAME).read_text())
    assert report["config"]["influence"] == {
        "cn_mode": constants.CN_MODE_RAW,
        "negative_ami": constants.NEGATIVE_AMI_CLAMP,
        "direction": constants.DIRECTION_RECEIVED,
    }
    proc = run_mirw(
        "bench", "karate", "--direction", "received", "--out", tmp_path / "old"
    )
    assert proc.returncode == 2
    assert "--direction" in proc.stderr
    assert not (tmp_path / "old").exists()


#########
# Sweep #
#########


def test_sweep(tmp_path):
    proc = run_mirw(
        "sweep",
        "karate",
        "--ratios",
        "0.5,0.7,0.9",
        "--methods",
        "ra,mirw",
        "--trials",
        "2",
        "--seed",
        "5",
        "--out",
        tmp_path / "sweep",
    )
    assert proc.returncode == 0, proc.stderr
    sweep = pd.read_csv(tmp_path / "sweep" / constants.SWEEP_FILENAME)
    assert sweep.shape[0] == 3 * 2
    assert sweep["ratio"].unique().tolist() == [0.5, 0.7, 0.9]
    for frac in ("0.50", "0.70", "0.90"):
        assert (
            tmp_path / "sweep" / f"train_{frac}" / constants.REPORT_FILENAME
        ).exists()


def test_sweep_ratio_bound(tmp_path):
    proc = run_mirw(
        "sweep", "karate", "--ratios", "1.0", "--out", tmp_path / "bad"
    )
    assert proc.returncode == 2
    assert not (tmp_path / "bad").exists()
