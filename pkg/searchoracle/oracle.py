#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""

Exact shortest-path solvers on the 8-connected grid: A* with the octile
heuristic and uniform-cost search (Dijkstra) as its reference.

Both expand the open list ordered by (f, h, insertion order); neighbors are
pushed in the fixed direction order, so ties resolve identically on every run.

"""

# Imports
import heapq
import time
from typing import NamedTuple
from gridworld import SQRT2, Path, path_metrics


# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
# Classes

class NoPathError(RuntimeError):
    pass


class OracleResult(NamedTuple):
    """ Optimal path, number of expanded nodes and solver wall time in seconds """
    path: Path
    expanded: int
    elapsed: float


# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
# Functions

def octile(a, b):
    """ Octile distance, exact on an empty 8-connected grid with costs 1 / sqrt(2) """
    dx, dy = abs(a[0]-b[0]), abs(a[1]-b[1])
    return max(dx,dy) + (SQRT2-1.0)*min(dx,dy)


def _zero(a, b):
    return 0.0


def _best_first(instance, heuristic):
    """ Shared best-first search; returns an OracleResult or raises NoPathError """
    t0 = time.perf_counter()
    gridmap, start, goal = instance.map, instance.start, instance.goal
    table = gridmap.neighbor_table

    h0 = heuristic(start, goal)
    open_list = [(h0, h0, 0, start)]
    g_score = {start: 0.0}
    parent = {start: None}
    closed = set()
    pushed = 1
    expanded = 0

    while open_list:
        _, _, _, node = heapq.heappop(open_list)
        if node in closed:
            continue
        closed.add(node)
        expanded += 1

        if node == goal:
            nodes = []
            while node is not None:
                nodes.append(node)
                node = parent[node]
            path = path_metrics(nodes[::-1], gridmap)
            return OracleResult(path, expanded, time.perf_counter()-t0)

        g = g_score[node]
        for nb,cost,_ in table[node.y][node.x]:
            if nb in closed:
                continue
            g_new = g + cost
            if g_new < g_score.get(nb, float("inf")) - 1e-12:
                g_score[nb] = g_new
                parent[nb] = node
                h = heuristic(nb, goal)
                heapq.heappush(open_list, (g_new+h, h, pushed, nb))
                pushed += 1

    raise NoPathError("No path from {} to {}".format(tuple(start), tuple(goal)))


def astar(instance):
    """ Minimal-cost path by A* with the admissible octile heuristic """
    return _best_first(instance, octile)


def dijkstra(instance):
    """ Minimal-cost path by uniform-cost search """
    return _best_first(instance, _zero)


def as_run_result(oracle_result):
    """ Oracle outcome in the shape of a colony RunResult, for tabulation """
    from colonycore import RunResult
    return RunResult( best_path=oracle_result.path, best_per_iteration=[], elapsed=oracle_result.elapsed,
                      succeeded=True, iterations_run=0 )
