#!/usr/bin/env python3
# -*- coding: utf-8 -*-

__version__ = "0.1.0"

from .gridmap import DIRECTIONS, DIRECTION_INDEX, SQRT2
from .gridmap import GridMap, Node, Instance, Path
from .gridmap import InvalidMapError, InvalidNodeError, InvalidPathError, InvalidInstanceError
from .gridmap import euclid, is_legal_move, neighbors, count_turns, path_cost, path_metrics
from .gridmap import connected_components, is_reachable
from .dataset import MIN_DATASET_SIZE, DENSITY_RANGE, is_connected, has_cavity
from .dataset import generate_map, generate_dataset, ctrap_instance, sample_instances
