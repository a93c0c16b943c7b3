#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""

Tests of the benchmark harness: labels, metrics and complete sweeps

"""

# Imports
import math
import pytest
from gridworld import GridMap, generate_dataset, sample_instances
from searchoracle import astar
from colonycore import ParameterError, RunResult, run_colony
from benchharness import BenchConfigError
from benchharness import parse_label, worker_count, path_improve, summarize, mean_curve
from benchharness import run_benchmark, run_instance_study


class FakePath(object):
    def __init__(self, cost, turns=0):
        self.cost = cost
        self.turns = turns


def run_result(cost, elapsed=0.1, turns=0):
    if cost is None:
        return RunResult(best_path=None, best_per_iteration=[], elapsed=elapsed, succeeded=False)
    return RunResult(best_path=FakePath(cost, turns), best_per_iteration=[cost], elapsed=elapsed, succeeded=True)


# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
# Labels

def test_oracle_labels():
    config = parse_label("astar")
    assert config.is_oracle
    assert config.label == "A*"
    assert parse_label("Dijkstra").name == "dijkstra"


def test_colony_labels():
    config = parse_label("PFACO-15-10")
    assert config.label == "PFACO-15-10"
    assert (config.params.ants, config.params.iterations, config.params.variant) == (15, 10, "PFACO")
    assert parse_label("eliteas-30-20").params.variant == "EliteAS"
    assert parse_label("pfaco_noltos-5-5").params.use_ltos is False
    assert parse_label("pfaco_noadpi-5-5").label == "PFACO_noADPI-5-5"
    assert parse_label("as-5-5", timeout_seconds=3.0).params.timeout_seconds == 3.0


@pytest.mark.parametrize("label", ["pfaco-0-10", "as-5-0", "aco-5-5", "as-x-5", "pfaco", "mmas-5"])
def test_invalid_labels(label):
    with pytest.raises(BenchConfigError):
        parse_label(label)


def test_unknown_label_lists_valid_names():
    with pytest.raises(BenchConfigError, match="eliteas"):
        parse_label("aco-5-5")


def test_worker_count(monkeypatch):
    monkeypatch.delenv("PLANNER_THREADS", raising=False)
    assert worker_count() == 1
    monkeypatch.setenv("PLANNER_THREADS", "4")
    assert worker_count() == 4
    monkeypatch.setenv("PLANNER_THREADS", "many")
    with pytest.raises(BenchConfigError):
        worker_count()


# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
# Metrics

def test_path_improve():
    assert path_improve(6.157, 5.766) == pytest.approx(0.0678, abs=1e-4)
    assert path_improve(5.068, 5.013) == pytest.approx(0.01097, abs=1e-4)
    assert path_improve(4.2, 4.2) == 0.0
    with pytest.raises(ParameterError):
        path_improve(4.2, 0.0)


def test_summarize_single_run():
    row = summarize([(None, run_result(5.0, 0.1))])
    assert row.average_path == 5.0
    assert row.sd_p == 0.0
    assert row.time_mean_s == pytest.approx(0.1)
    assert row.success_rate_pct == 100.0
    assert row.n_runs == 1


def test_summarize_population_std():
    row = summarize([(None, run_result(3.0, turns=1)), (None, run_result(5.0, turns=2))])
    assert row.average_path == 4.0
    assert row.sd_p == 1.0
    assert row.turning_mean == 1.5
    assert row.best_path == 3.0


def test_summarize_counts_failures():
    runs = [(None, run_result(None)) for _ in range(7)] + [(None, run_result(10.0 + (k % 3))) for k in range(93)]
    row = summarize(runs)
    assert row.success_rate_pct == pytest.approx(93.0)
    assert row.average_path == pytest.approx(sum(10.0 + (k % 3) for k in range(93)) / 93)
    assert row.n_runs == 100
    failed = summarize([(None, run_result(None))])
    assert failed.average_path is None
    assert failed.success_rate_pct == 0.0


def test_mean_curve_ignores_missing_iterations():
    assert mean_curve([[math.inf, 4.0], [6.0, 2.0]]) == [6.0, 3.0]
    assert mean_curve([[math.inf], [math.inf]]) == [None]
    assert mean_curve([]) == []


# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
# Sweeps

def test_oracle_dominance_on_empty_maps():
    configs = [parse_label("astar"), parse_label("pfaco-15-10")]
    report = run_benchmark([GridMap.empty(10)], configs, 10, master_seed=3)
    assert len(report.rows) == 2
    oracle, colony = report.row("A*"), report.row("PFACO-15-10")
    assert oracle.success_rate_pct == 100.0
    assert colony.success_rate_pct == 100.0
    assert colony.average_path >= oracle.average_path - 1e-9
    assert report.dominance_violations == 0
    assert len(report.oracle_costs) == 10
    assert all(inst["map"] == 0 for inst in report.instances)
    assert list(report.curves) == ["PFACO-15-10"]
    assert len(report.curves["PFACO-15-10"]) == 10


def test_benchmark_is_deterministic():
    maps = generate_dataset(10, 2)
    configs = [parse_label("as-5-3"), parse_label("mmas-5-3")]
    first = run_benchmark(maps, configs, 4, repeats=2, master_seed=9)
    second = run_benchmark(maps, configs, 4, repeats=2, master_seed=9)
    assert first == second
    assert first.to_dict() == second.to_dict()
    assert len(first.seeds) == 8


def test_worker_count_does_not_change_the_report():
    maps = generate_dataset(10, 2)
    configs = [parse_label("astar"), parse_label("eliteas-5-3")]
    sequential = run_benchmark(maps, configs, 4, master_seed=1, n_jobs=1)
    parallel = run_benchmark(maps, configs, 4, master_seed=1, n_jobs=2)
    assert sequential == parallel


def test_significance_and_path_improve():
    configs = [parse_label("astar"), parse_label("as-10-5"), parse_label("as-20-10")]
    report = run_benchmark([GridMap.empty(8)], configs, 6, master_seed=2)
    assert report.row("A*").p_value is None
    for label in ("AS-10-5", "AS-20-10"):
        row = report.row(label)
        assert 0.0 <= row.p_value <= 1.0
        assert row.significant == (row.p_value < 0.05)
    small, large = report.row("AS-10-5"), report.row("AS-20-10")
    assert small.path_improve_pct is None
    assert large.path_improve_pct == pytest.approx(100.0 * path_improve(small.average_path, large.average_path))


def test_timeouts_are_recorded():
    maze = generate_dataset(20, 1)[5]
    configs = [parse_label("as-30-50", timeout_seconds=0.001)]
    report = run_benchmark([maze], configs, 3, master_seed=0)
    assert report.row("AS-30-50").success_rate_pct < 100.0
    assert report.row("AS-30-50").n_runs == 3


def test_instance_study(ctrap10):
    configs = [parse_label("astar"), parse_label("pfaco-10-5")]
    report = run_instance_study(ctrap10, configs, repeats=3, master_seed=4)
    assert report.row("PFACO-10-5").n_runs == 3
    assert report.row("A*").n_runs == 3
    assert report.row("A*").sd_p == 0.0
    assert report.oracle_costs == [pytest.approx(astar(ctrap10).path.cost)]
    assert len(report.instances) == 1


def test_report_tables():
    configs = [parse_label("astar"), parse_label("as-5-3")]
    report = run_benchmark([GridMap.empty(8)], configs, 3, master_seed=0)
    frame = report.to_frame()
    assert list(frame["algorithm"]) == ["A*", "AS-5-3"]
    assert "time_mean_s" not in frame.columns
    assert "time_mean_s" in report.to_frame(include_timing=True).columns
    assert list(report.curves_frame().columns) == ["iteration", "AS-5-3"]
    text = str(report)
    assert "AveragePath" in text and "AS-5-3" in text and "PathImprove" in text
    assert "time_mean_s" not in report.to_dict()["rows"][0]


@pytest.mark.slow
def test_pfaco_is_near_optimal_on_random_instances():
    params = parse_label("pfaco-30-20").params
    near = 0
    for nr,inst in enumerate(sample_instances(generate_dataset(10, 0), 100, 0)):
        result = run_colony(inst, params.replace(seed=nr))
        optimum = astar(inst).path.cost
        if result.succeeded:
            assert result.best_path.cost >= optimum - 1e-9
            near += result.best_path.cost <= 1.1 * optimum
    assert near >= 90
