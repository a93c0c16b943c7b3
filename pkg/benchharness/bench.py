#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""

Benchmark harness: runs algorithm configurations on random instances,
aggregates the path-length/time/turning metrics per configuration, compares
configurations with the Mann-Whitney U test and collects mean convergence
curves.

Every (configuration, instance, repeat) run is an independent job seeded from
the master seed; results are reduced in job order, so the report does not
depend on the number of workers.

"""

# Imports
import dataclasses
import os
import warnings
from typing import Dict, List, Optional
import numpy as np
import pandas as pd
from joblib import Parallel, delayed
from tqdm import tqdm
from gridworld import sample_instances
from searchoracle import NoPathError, astar, dijkstra, as_run_result
from colonycore import ColonyParams, ParameterError, RunResult, run_colony, load_settings
from .stats import mann_whitney_u


# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
# Settings

# label name -> (variant, parameter overrides, display name)
ALGORITHMS = {
    "as":            ("AS",      {}, "AS"),
    "eliteas":       ("EliteAS", {}, "EliteAS"),
    "mmas":          ("MMAS",    {}, "MMAS"),
    "pfaco":         ("PFACO",   {}, "PFACO"),
    "pfaco_noadpi":  ("PFACO",   {"use_adpi": False},  "PFACO_noADPI"),
    "pfaco_nopsprs": ("PFACO",   {"use_psprs": False}, "PFACO_noPSPRS"),
    "pfaco_noltos":  ("PFACO",   {"use_ltos": False},  "PFACO_noLTOS") }

ORACLES = {
    "astar":    (astar,    "A*"),
    "dijkstra": (dijkstra, "Dijkstra") }

PATH_IMPROVE_NOTE = ("PathImprove = (AveragePath(small) - AveragePath(large)) / AveragePath(large), "
                     "small/large = fewest/most ants x iterations of one algorithm. Tables that divide "
                     "by the small-configuration average report smaller values.")


# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
# Classes

class BenchConfigError(ValueError):
    pass


@dataclasses.dataclass(frozen=True)
class AlgoConfig:
    """ Labelled algorithm configuration; params is None for exact oracles """
    label: str
    name: str
    params: Optional[ColonyParams] = None

    @property
    def is_oracle(self):
        return self.params is None


@dataclasses.dataclass
class MetricRow:
    """ Aggregates of one configuration; path and time statistics are over
        successful runs only, success rate over all runs """
    average_path: Optional[float]
    time_mean_s: Optional[float] = dataclasses.field(default=None, compare=False)
    turning_mean: Optional[float] = None
    sd_p: Optional[float] = None
    sd_t: Optional[float] = dataclasses.field(default=None, compare=False)
    success_rate_pct: float = 0.0
    path_improve_pct: Optional[float] = None
    p_value: Optional[float] = None
    best_path: Optional[float] = None
    n_runs: int = 0
    significant: Optional[bool] = None

    def as_dict(self, include_timing=False):
        d = dataclasses.asdict(self)
        if not include_timing:
            del d["time_mean_s"], d["sd_t"]
        return d


@dataclasses.dataclass
class BenchReport:
    """ Result of a benchmark sweep """
    dataset_id: str
    rows: List[tuple]
    curves: Dict[str, List[Optional[float]]]
    seeds: List[int]
    instances: List[dict] = dataclasses.field(default_factory=list)
    oracle_costs: List[Optional[float]] = dataclasses.field(default_factory=list)
    dominance_violations: int = 0
    notes: List[str] = dataclasses.field(default_factory=list)

    def row(self, label):
        """ MetricRow of the configuration with this label """
        for config,metrics in self.rows:
            if config.label == label:
                return metrics
        raise KeyError(label)

    def to_frame(self, include_timing=False):
        """ One row per configuration, columns in table order """
        records = []
        for config,metrics in self.rows:
            record = {"algorithm": config.label}
            record.update(metrics.as_dict(include_timing))
            records.append(record)
        columns = ["algorithm", "average_path", "time_mean_s", "turning_mean", "sd_p", "sd_t",
                   "success_rate_pct", "path_improve_pct", "p_value", "best_path", "n_runs", "significant"]
        if not include_timing:
            columns = [c for c in columns if c not in ("time_mean_s","sd_t")]
        return pd.DataFrame.from_records(records, columns=columns)

    def curves_frame(self):
        """ One row per iteration, one column per colony configuration """
        n = max([len(c) for c in self.curves.values()], default=0)
        data = { label: [ (c[k] if k < len(c) and c[k] is not None else np.nan) for k in range(n) ] for label,c in self.curves.items() }
        frame = pd.DataFrame(data, columns=list(self.curves.keys()))
        frame.insert(0, "iteration", np.arange(1,n+1))
        return frame

    def to_dict(self, include_timing=False):
        return {
            "dataset_id": self.dataset_id,
            "seeds": list(self.seeds),
            "instances": list(self.instances),
            "oracle_costs": list(self.oracle_costs),
            "dominance_violations": self.dominance_violations,
            "rows": [ dict(algorithm=config.label, **metrics.as_dict(include_timing)) for config,metrics in self.rows ],
            "curves": {label: list(c) for label,c in self.curves.items()},
            "notes": list(self.notes) }

    def __str__(self):
        """ Table-shaped summary """
        def fmt(v, pattern="{:0.3f}"):
            if v is None:
                return "-"
            if isinstance(v, float) and (abs(v) < 1e-3 and v != 0):
                return "{:0.3e}".format(v)
            return pattern.format(v)
        lines = ["BenchReport {}: {} configurations, {} instances".format(self.dataset_id, len(self.rows), len(self.instances))]
        header = "{:<18}{:>12}{:>11}{:>9}{:>9}{:>11}{:>9}{:>13}{:>11}".format(
            "Algorithm", "AveragePath", "Time(s)", "Turning", "SD-P", "SD-T", "Success%", "PathImprove%", "p-value")
        lines.append(header)
        lines.append("-"*len(header))
        for config,m in self.rows:
            lines.append( "{:<18}{:>12}{:>11}{:>9}{:>9}{:>11}{:>9}{:>13}{:>11}".format(
                config.label, fmt(m.average_path), fmt(m.time_mean_s), fmt(m.turning_mean, "{:0.2f}"),
                fmt(m.sd_p), fmt(m.sd_t), fmt(m.success_rate_pct, "{:0.0f}"), fmt(m.path_improve_pct, "{:0.2f}"),
                fmt(m.p_value) + ("" if m.significant is None or m.significant else " (ns)") ) )
        if self.dominance_violations:
            lines.append("!! {} colony paths shorter than the A* optimum !!".format(self.dominance_violations))
        lines.extend( "* " + note for note in self.notes )
        return "\n".join(lines)


# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
# Configurations

def parse_label(label, settingsfile=None, **overrides):
    """ AlgoConfig from "astar", "dijkstra" or "<name>-<ants>-<iterations>" """
    text = label.strip().lower()
    if text in ORACLES:
        return AlgoConfig(label=ORACLES[text][1], name=text)

    parts = text.rsplit("-", 2)
    valid = ", ".join( list(ORACLES) + ["{}-<ants>-<iterations>".format(n) for n in ALGORITHMS] )
    if len(parts) != 3 or parts[0] not in ALGORITHMS:
        raise BenchConfigError("Unknown algorithm label '{}', valid names: {}".format(label, valid))
    try:
        ants, iterations = int(parts[1]), int(parts[2])
    except ValueError:
        raise BenchConfigError("Label '{}' needs integer ants and iterations".format(label))
    if ants < 1 or iterations < 1:
        raise BenchConfigError("Label '{}' needs ants >= 1 and iterations >= 1".format(label))

    variant, switches, display = ALGORITHMS[parts[0]]
    kwargs = dict(switches)
    kwargs.update(overrides)
    try:
        params = ColonyParams.for_variant(variant, ants, iterations, settingsfile=settingsfile, **kwargs)
    except ParameterError as e:
        raise BenchConfigError("Invalid parameters for '{}': {}".format(label, e))
    return AlgoConfig(label="{}-{}-{}".format(display, ants, iterations), name=parts[0], params=params)


def worker_count():
    """ Number of parallel benchmark workers, from PLANNER_THREADS (default 1) """
    value = os.environ.get("PLANNER_THREADS", "1")
    try:
        n = int(value)
    except ValueError:
        raise BenchConfigError("PLANNER_THREADS must be an integer, got '{}'".format(value))
    return max(1, n)


def run_seeds(master_seed, n_instances, repeats):
    """ One seed per (instance, repeat), shared by all configurations """
    root = np.random.SeedSequence(int(master_seed))
    return [ [int(s.generate_state(1)[0]) for s in np.random.SeedSequence(root.entropy, spawn_key=(i,)).spawn(repeats)]
             for i in range(n_instances) ]


# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
# Metrics

def path_improve(avg_small, avg_large):
    """ (avg_small - avg_large) / avg_large """
    if not avg_large > 0:
        raise ParameterError("Average path of the large configuration must be positive, got {}".format(avg_large))
    return (avg_small - avg_large) / avg_large


def summarize(run_results):
    """ MetricRow from a list of (instance, RunResult) """
    if len(run_results) == 0:
        raise ValueError("Cannot summarize an empty run list")
    results = [r for _,r in run_results]
    successes = [r for r in results if r.succeeded and r.best_path is not None]
    success_rate = 100.0 * len(successes) / len(results)
    if len(successes) == 0:
        return MetricRow(average_path=None, success_rate_pct=success_rate, n_runs=len(results))
    costs = np.array([r.best_path.cost for r in successes])
    turns = np.array([r.best_path.turns for r in successes])
    times = np.array([r.elapsed for r in successes])
    return MetricRow( average_path=float(costs.mean()), time_mean_s=float(times.mean()),
                      turning_mean=float(turns.mean()), sd_p=float(costs.std()), sd_t=float(times.std()),
                      success_rate_pct=success_rate, best_path=float(costs.min()), n_runs=len(results) )


def mean_curve(curves):
    """ Column-wise mean of best-so-far curves, ignoring iterations without a
        path yet; None where no run has a path """
    if len(curves) == 0:
        return []
    array = np.array(curves, dtype=float)
    array[~np.isfinite(array)] = np.nan
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", category=RuntimeWarning)
        means = np.nanmean(array, axis=0)
    return [None if np.isnan(v) else float(v) for v in means]


# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
# Runner

def run_job(config, instance, seed):
    """ One run of one configuration; never raises for search failures """
    if config.is_oracle:
        solver = ORACLES[config.name][0]
        try:
            oracle = solver(instance)
        except NoPathError:
            return RunResult(best_path=None, best_per_iteration=[], succeeded=False)
        return as_run_result(oracle)
    result = run_colony(instance, config.params.replace(seed=int(seed)))
    result.final_field = None
    return result


def _oracle_cost(instance):
    try:
        return astar(instance).path.cost
    except NoPathError:
        return None


def run_benchmark(dataset, configs, n_instances, repeats=1, master_seed=0, instances=None,
                  significance=None, n_jobs=None, dataset_id="dataset", verbose=False):
    """ Runs every configuration on n_instances instances sampled from the
        dataset (or on the given instances), 'repeats' seeds each.

        - significance: level for the p-value flags (default from the settings file)
        - n_jobs: worker count (default from PLANNER_THREADS)
    """
    configs = list(configs)
    if len(configs) == 0:
        raise BenchConfigError("No configurations to benchmark")
    if instances is None:
        if len(dataset) == 0:
            raise BenchConfigError("Empty dataset")
        instances = sample_instances(dataset, n_instances, master_seed)
    instances = list(instances)
    repeats = int(repeats)
    if repeats < 1:
        raise BenchConfigError("Repeats must be at least 1, got {}".format(repeats))
    if significance is None:
        significance = load_settings()[1]["significance"]
    n_jobs = worker_count() if n_jobs is None else int(n_jobs)

    # Run all jobs, ordered by (config, instance, repeat)
    seeds = run_seeds(master_seed, len(instances), repeats)
    jobs = [(c,i,r) for c in range(len(configs)) for i in range(len(instances)) for r in range(repeats)]
    results = Parallel(n_jobs=n_jobs)(
        delayed(run_job)(configs[c], instances[i], seeds[i][r])
        for c,i,r in tqdm(jobs, desc="Benchmark runs", unit="Run", disable=not verbose) )

    # Check colony results against the A* optimum
    oracle_costs = [_oracle_cost(inst) for inst in instances]
    violations = 0
    per_config = [[] for _ in configs]
    for (c,i,r),result in zip(jobs,results):
        per_config[c].append( (instances[i], result) )
        if result.succeeded and oracle_costs[i] is not None and result.best_path.cost < oracle_costs[i] - 1e-9:
            violations += 1
    if violations:
        warnings.warn("{} successful paths are shorter than the A* optimum".format(violations), RuntimeWarning)

    # Aggregate
    rows = [ (config, summarize(per_config[c])) for c,config in enumerate(configs) ]
    costs = [ [r.best_path.cost for _,r in per_config[c] if r.succeeded] for c in range(len(configs)) ]
    curves = { config.label: mean_curve([r.best_per_iteration for _,r in per_config[c]])
               for c,config in enumerate(configs) if not config.is_oracle }

    # Significance against the configuration with the best average path
    ranked = [c for c,(_,m) in enumerate(rows) if m.average_path is not None]
    if ranked:
        reference = min(ranked, key=lambda c: rows[c][1].average_path)
        for c,(_,metrics) in enumerate(rows):
            if c != reference and len(costs[c]) > 0:
                _, metrics.p_value = mann_whitney_u(costs[reference], costs[c])
                metrics.significant = metrics.p_value < significance

    # PathImprove between the smallest and largest setting of each algorithm
    by_name = {}
    for c,config in enumerate(configs):
        if not config.is_oracle:
            by_name.setdefault(config.name, []).append(c)
    for name,members in by_name.items():
        size = lambda c: configs[c].params.ants * configs[c].params.iterations
        small, large = min(members, key=size), max(members, key=size)
        if size(small) != size(large) and rows[small][1].average_path is not None and rows[large][1].average_path is not None:
            rows[large][1].path_improve_pct = 100.0 * path_improve(rows[small][1].average_path, rows[large][1].average_path)

    # Instances, by map index when they come from the dataset
    map_index = {}
    for nr,gridmap in enumerate(dataset):
        map_index.setdefault(gridmap, nr)
    described = [ {"map": map_index.get(inst.map), "start": list(inst.start), "goal": list(inst.goal)} for inst in instances ]

    return BenchReport( dataset_id=dataset_id, rows=rows, curves=curves,
                        seeds=[s for row in seeds for s in row], instances=described,
                        oracle_costs=oracle_costs, dominance_violations=violations,
                        notes=[PATH_IMPROVE_NOTE] )


def run_instance_study(instance, configs, repeats, master_seed=0, **kwargs):
    """ Repeatability study: every configuration 'repeats' times on one instance """
    return run_benchmark([instance.map], configs, n_instances=1, repeats=repeats, master_seed=master_seed,
                         instances=[instance], dataset_id=kwargs.pop("dataset_id","instance"), **kwargs)
