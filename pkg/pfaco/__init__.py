#!/usr/bin/env python3
# -*- coding: utf-8 -*-

__version__ = "0.1.0"

from .strategies import ELITE_REPLICATION, DegenerateInstanceError, DegeneratePathError
from .strategies import EliteArchive, IterationPool, solution_rank
from .strategies import adpi_init, build_new_set, psprs_update
from .strategies import ltos_smooth, ltos_step, ltos_deposit, run_pfaco
