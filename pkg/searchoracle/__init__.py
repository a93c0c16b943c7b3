#!/usr/bin/env python3
# -*- coding: utf-8 -*-

__version__ = "0.1.0"

from .oracle import NoPathError, OracleResult
from .oracle import octile, astar, dijkstra, as_run_result
