#!/usr/bin/env python3
# -*- coding: utf-8 -*-

__version__ = "0.1.0"

from .stats import mann_whitney_u
from .bench import ALGORITHMS, ORACLES, BenchConfigError, AlgoConfig, MetricRow, BenchReport
from .bench import parse_label, worker_count, run_seeds, path_improve, summarize, mean_curve
from .bench import run_job, run_benchmark, run_instance_study
