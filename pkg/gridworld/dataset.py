#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""

Procedural map datasets and random start/goal instances.

A dataset holds 10 maps of one size: one obstacle-free map, five maps that
each repeat a single obstacle pattern and four maps that mix patterns.
Every map is generated from its own seed stream, so a (size, seed) pair always
yields the same maps.

"""

# Imports
import warnings
import numpy as np
from scipy import ndimage
from .gridmap import GridMap, Instance, Node, connected_components


# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
# Settings

MAPS_PER_DATASET = 10
DENSITY_RANGE = (0.10, 0.25)
MIN_DATASET_SIZE = 5
SINGLE_PATTERNS = ("block", "ltrap", "ctrap", "scatter", "bar")
MAX_PLACEMENT_ATTEMPTS = 200
TRAP_SIDES = {"ltrap": 2, "ctrap": 3}


# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
# Obstacle patterns
# Each returns a boolean (size, size) array with the new obstacle cells

def _pattern_block(size, rng):
    w = int(rng.integers(2, max(2, size//4+1)+1))
    h = int(rng.integers(2, max(2, size//4+1)+1))
    x = int(rng.integers(0, size-w+1))
    y = int(rng.integers(0, size-h+1))
    cells = np.zeros((size,size), dtype=bool)
    cells[y:y+h,x:x+w] = True
    return cells

def _pattern_bar(size, rng):
    length = int(rng.integers(size//3, size//2+2))
    cells = np.zeros((size,size), dtype=bool)
    if rng.random() < 0.5:
        x = int(rng.integers(0, size-length+1))
        y = int(rng.integers(1, size-1))
        cells[y,x:x+length] = True
    else:
        x = int(rng.integers(1, size-1))
        y = int(rng.integers(0, size-length+1))
        cells[y:y+length,x] = True
    return cells

def _pattern_scatter(size, rng):
    cells = np.zeros((size,size), dtype=bool)
    cells[int(rng.integers(0,size)), int(rng.integers(0,size))] = True
    return cells

def _pattern_ltrap(size, rng):
    arm = int(rng.integers(max(2,size//3), max(2,size//2)+1))
    x = int(rng.integers(1, size-arm))
    y = int(rng.integers(1, size-arm))
    cells = np.zeros((arm,arm), dtype=bool)
    cells[-1,:] = True
    cells[:,-1] = True
    cells = np.rot90(cells, k=int(rng.integers(0,4)))
    out = np.zeros((size,size), dtype=bool)
    out[y:y+arm,x:x+arm] = cells
    return out

def _pattern_ctrap(size, rng):
    side = int(rng.integers(max(3,size//3), max(3,size//2)+1))
    x = int(rng.integers(1, size-side))
    y = int(rng.integers(1, size-side))
    cells = np.zeros((side,side), dtype=bool)
    cells[0,:] = True
    cells[-1,:] = True
    cells[:,-1] = True
    cells = np.rot90(cells, k=int(rng.integers(0,4)))
    out = np.zeros((size,size), dtype=bool)
    out[y:y+side,x:x+side] = cells
    return out

PATTERNS = {
    "block": _pattern_block,
    "ltrap": _pattern_ltrap,
    "ctrap": _pattern_ctrap,
    "scatter": _pattern_scatter,
    "bar": _pattern_bar }


# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
# Functions

def is_connected(cells):
    """ True when all free cells of the boolean obstacle array form one component """
    _, n = connected_components(GridMap.from_array(cells))
    return n <= 1


def has_cavity(cells, enclosed_sides=3):
    """ True when some obstacle component bends around a free cell of its
        bounding box: with enclosed_sides=2 the component lies beside it in
        its row and in its column (an L), with enclosed_sides=3 it lies on
        both sides along one axis and on at least one side along the other
        (a C) """
    cells = np.asarray(cells, dtype=bool)
    labels, _ = ndimage.label(cells, structure=np.ones((3,3), dtype=bool))
    for nr,box in enumerate(ndimage.find_objects(labels), start=1):
        part = labels[box] == nr
        free = ~cells[box]
        left = np.logical_or.accumulate(part, axis=1)
        right = np.logical_or.accumulate(part[:,::-1], axis=1)[:,::-1]
        up = np.logical_or.accumulate(part, axis=0)
        down = np.logical_or.accumulate(part[::-1,:], axis=0)[::-1,:]
        if enclosed_sides >= 3:
            bent = (left & right & (up | down)) | (up & down & (left | right))
        else:
            bent = (left | right) & (up | down)
        if np.any(free & bent):
            return True
    return False


def _fill_patterns(size, pattern_names, rng):
    """ Adds patterns drawn at random from pattern_names until the obstacle
        density reaches a target drawn from DENSITY_RANGE.

        A placement is rejected when it would disconnect the free cells,
        exceed the upper density bound or, on a single-trap map, remove the
        last trap-shaped cavity. If the patterns cannot reach the target,
        single cells fill up the remainder under the same rules. """
    target = int(np.ceil(rng.uniform(*DENSITY_RANGE) * size * size))
    max_cells = int(np.floor(DENSITY_RANGE[1] * size * size))
    target = min(max(target, int(np.ceil(DENSITY_RANGE[0] * size * size))), max_cells)
    trap_sides = TRAP_SIDES.get(pattern_names[0]) if len(pattern_names) == 1 else None
    cells = np.zeros((size,size), dtype=bool)
    has_trap = False

    def accept(candidate):
        if candidate.sum() > max_cells or not is_connected(candidate):
            return False
        if trap_sides is not None and has_trap and not has_cavity(candidate, trap_sides):
            return False
        return True

    for _ in range(MAX_PLACEMENT_ATTEMPTS):
        if cells.sum() >= target:
            break
        name = pattern_names[int(rng.integers(0,len(pattern_names)))]
        candidate = np.logical_or(cells, PATTERNS[name](size, rng))
        if accept(candidate):
            cells = candidate
            has_trap = has_trap or (trap_sides is not None and has_cavity(cells, trap_sides))

    for _ in range(MAX_PLACEMENT_ATTEMPTS * size):
        if cells.sum() >= target:
            break
        candidate = np.logical_or(cells, _pattern_scatter(size, rng))
        if accept(candidate):
            cells = candidate
    return GridMap.from_array(cells)


def generate_map(size, seed, index):
    """ Generates map number 'index' (0-9) of the dataset of the given size:
        0 obstacle-free, 1-5 single pattern (block, L-trap, C-trap, scattered
        cells, wall bars), 6-9 mixed patterns """
    rng = np.random.default_rng(np.random.SeedSequence(int(seed), spawn_key=(int(size), int(index))))
    if index == 0:
        return GridMap.empty(size)
    elif index <= len(SINGLE_PATTERNS):
        return _fill_patterns(size, (SINGLE_PATTERNS[index-1],), rng)
    else:
        return _fill_patterns(size, SINGLE_PATTERNS, rng)


def generate_dataset(size, seed):
    """ Returns the 10 maps of the dataset of size x size cells """
    size = int(size)
    if size < MIN_DATASET_SIZE:
        raise ValueError("Map size must be at least {} for generated datasets, got {}".format(MIN_DATASET_SIZE, size))
    return [generate_map(size, seed, index) for index in range(MAPS_PER_DATASET)]


def ctrap_instance(size=10):
    """ Corner-to-corner instance with a central C-shaped obstacle whose
        opening faces the start, so the straight diagonal runs into the trap.
        Two wall bars near the start make the detours maze-like. """
    size = int(size)
    if size < MIN_DATASET_SIZE:
        raise ValueError("Map size must be at least {} for the C-trap instance, got {}".format(MIN_DATASET_SIZE, size))
    cells = np.zeros((size,size), dtype=bool)
    lo, hi = int(round(0.3*size)), min(int(round(0.7*size)), size-2)
    mid = (lo+hi)//2
    cells[lo:hi+1,hi] = True    # right wall
    cells[hi,lo:hi+1] = True    # bottom wall
    cells[lo,mid:hi+1] = True   # top lip
    cells[mid:hi+1,lo] = True   # left lip
    bar = max(2, size//3)
    cells[size//2:size//2+bar,1] = True
    cells[1,size//2:size//2+bar] = True
    return Instance(GridMap.from_array(cells), Node(0,0), Node(size-1,size-1))


def sample_instances(maps, count, seed):
    """ Draws 'count' instances: a map uniformly from 'maps', then start and
        goal uniformly from its free cells, rejecting equal or mutually
        unreachable pairs. Maps with fewer than 2 connected free cells are
        skipped with a warning. """
    count = int(count)
    if count < 1:
        raise ValueError("Instance count must be at least 1, got {}".format(count))

    # Pre-compute free cells and component labels of every usable map
    usable = []
    for nr,gridmap in enumerate(maps):
        labels, n = connected_components(gridmap)
        largest = int(np.bincount(labels.ravel())[1:].max()) if n > 0 else 0
        if largest < 2:
            warnings.warn("Skipping map {}: fewer than 2 connected free cells".format(nr), RuntimeWarning)
            continue
        usable.append( (gridmap, gridmap.free_cells, labels) )
    if len(usable) == 0:
        raise ValueError("None of the {} maps has two connected free cells".format(len(maps)))

    rng = np.random.default_rng(int(seed))
    instances = []
    while len(instances) < count:
        gridmap, free, labels = usable[int(rng.integers(0,len(usable)))]
        start = free[int(rng.integers(0,len(free)))]
        goal = free[int(rng.integers(0,len(free)))]
        if start == goal or labels[start.y,start.x] != labels[goal.y,goal.x]:
            continue
        instances.append( Instance(gridmap, start, goal) )
    return instances
