#!/usr/bin/env python3
# -*- coding: utf-8 -*-

__version__ = "0.1.0"

from .settings import load_settings, default_settings_file
from .pheromone import ParameterError, DegenerateEdgeError, ContractError
from .pheromone import Deposit, PheromoneField
from .pheromone import inverse_distance_field, heuristic, transition_probabilities, sample_next
from .pheromone import length_deposit, deposit, evaporate_and_deposit, mmas_bounds
from .colony import VARIANTS, INITS, ColonyParams, AntState, RunResult
from .colony import ant_rng, initial_field, construct_tour, drive_colony, baseline_update, run_colony
