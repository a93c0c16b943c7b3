#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""

Pheromone field on the directed edges of a grid map, the state transition
rule, roulette-wheel sampling and the evaporation/deposit update

The field is a (height, width, 8) array: entry [y,x,k] holds tau of the edge
from node (x,y) in direction DIRECTIONS[k]. Illegal edges (into or out of
obstacles, off the map, corner cuts) are absent and always hold 0.

"""

# Imports
import bisect
import itertools
import math
from typing import NamedTuple
import numpy as np
from gridworld import DIRECTIONS, DIRECTION_INDEX, Node, Path, euclid


# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
# Exceptions

class ParameterError(ValueError):
    pass

class DegenerateEdgeError(ValueError):
    pass

class ContractError(ValueError):
    pass


# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
# Classes

class Deposit(NamedTuple):
    """ One pheromone deposit: the path, the deposit rule ("length" = Q/L,
        "turn-penalized" = Q/(L+Turn)) and a multiplicity weight """
    path: Path
    rule: str = "length"
    weight: float = 1.0


class PheromoneField(object):
    """ Immutable per-directed-edge pheromone concentrations.

        * values: read-only (height, width, 8) array of tau
        * legal: read-only (height, width, 8) mask of present edges
        * tau(i, j): concentration on the edge i -> j
        * node_values(): per-node maximum over incoming edges
    """

    def __init__(self, values, legal):
        """ - values: (height, width, 8) array of tau, entries outside 'legal' are zeroed
            - legal: (height, width, 8) boolean mask of legal edges
        """
        super(PheromoneField, self).__init__()
        legal = np.array(legal, dtype=bool)
        values = np.where(legal, np.asarray(values, dtype=float), 0.0)
        if values.shape != legal.shape or values.ndim != 3 or values.shape[2] != len(DIRECTIONS):
            raise ParameterError("Pheromone values must have shape (height, width, {})".format(len(DIRECTIONS)))
        if np.any(values < 0) or not np.all(np.isfinite(values)):
            raise ParameterError("Pheromone values must be finite and nonnegative")
        values.flags.writeable = False
        legal.flags.writeable = False
        self._values = values
        self._legal = legal
        self._table = None

    @classmethod
    def uniform(cls, gridmap, value=1.0):
        """ Constant tau on every legal edge of the map """
        legal = gridmap.move_mask
        return cls(np.full(legal.shape, float(value)), legal)

    def __str__(self):
        return "PheromoneField {}x{}, {} edges, tau in [{:0.4g}, {:0.4g}]".format(
            self.width, self.height, self.n_edges, self.min_tau(), self.max_tau() )

    def __eq__(self, other):
        if not isinstance(other, PheromoneField):
            return NotImplemented
        return bool(np.array_equal(self._legal, other._legal) and np.array_equal(self._values, other._values))

    @property
    def values(self):
        return self._values

    @property
    def legal(self):
        return self._legal

    @property
    def width(self):
        return self._values.shape[1]

    @property
    def height(self):
        return self._values.shape[0]

    @property
    def n_edges(self):
        return int(self._legal.sum())

    @property
    def table(self):
        """ Nested python lists [y][x][k] of tau, for fast scalar lookups """
        if self._table is None:
            self._table = self._values.tolist()
        return self._table

    def tau(self, i, j):
        """ Concentration on the directed edge i -> j; KeyError for absent edges """
        k = DIRECTION_INDEX.get((j[0]-i[0], j[1]-i[1]))
        if k is None or not (0 <= i[0] < self.width and 0 <= i[1] < self.height) or not self._legal[i[1],i[0],k]:
            raise KeyError("No edge from {} to {}".format(tuple(i), tuple(j)))
        return float(self._values[i[1],i[0],k])

    def edges(self):
        """ Yields ((i, j), tau) for every legal edge, row-major then direction order """
        for y,x,k in zip(*np.nonzero(self._legal)):
            dx,dy = DIRECTIONS[k]
            yield (Node(int(x),int(y)), Node(int(x+dx),int(y+dy))), float(self._values[y,x,k])

    def min_tau(self):
        return float(self._values[self._legal].min()) if self.n_edges else 0.0

    def max_tau(self):
        return float(self._values[self._legal].max()) if self.n_edges else 0.0

    def scaled(self, c):
        """ Field with every tau multiplied by c > 0 """
        return PheromoneField(self._values*float(c), self._legal)

    def with_values(self, values):
        """ Field on the same edges with new values """
        return PheromoneField(values, self._legal)

    def node_values(self):
        """ (height, width) array holding, per node, the maximum tau over its
            incoming edges; nodes without incoming edges (obstacles) hold 0 """
        h, w = self.height, self.width
        out = np.zeros((h,w))
        for k,(dx,dy) in enumerate(DIRECTIONS):
            src_y = slice(max(0,-dy), h-max(0,dy))
            src_x = slice(max(0,-dx), w-max(0,dx))
            dst_y = slice(max(0,dy), h-max(0,-dy))
            dst_x = slice(max(0,dx), w-max(0,-dx))
            out[dst_y,dst_x] = np.maximum(out[dst_y,dst_x], self._values[src_y,src_x,k])
        return out


# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
# Initial distributions

def inverse_distance_field(instance):
    """ tau0_ij = 1 / (1 + Euc(j, T)): higher concentration on edges leading
        to nodes near the goal """
    gridmap, goal = instance.map, instance.goal
    legal = gridmap.move_mask
    ys, xs = np.mgrid[0:gridmap.height, 0:gridmap.width]
    values = np.zeros(legal.shape)
    for k,(dx,dy) in enumerate(DIRECTIONS):
        values[:,:,k] = 1.0 / (1.0 + np.hypot(xs+dx-goal.x, ys+dy-goal.y))
    return PheromoneField(values, legal)


# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
# Transition rule

def heuristic(i, j):
    """ Heuristic desirability eta_ij = 1 / d_ij """
    d = euclid(i, j)
    if d == 0:
        raise DegenerateEdgeError("Heuristic is undefined for identical nodes {}".format(tuple(i)))
    return 1.0 / d


def transition_probabilities(field, ant, gridmap, alpha, beta):
    """ Returns [(Node, p)] over the allowed (legal, unvisited) neighbors of the
        ant's current node, p proportional to tau^alpha * eta^beta.
        An empty list is the dead-end signal; the ant is then marked not alive.
        When all weights vanish (tau = 0 with alpha > 0) the choice is uniform. """
    current = ant.current
    tau_row = field.table[current.y][current.x]
    allowed = [(nb,cost,k) for nb,cost,k in gridmap.neighbor_table[current.y][current.x] if nb not in ant.visited]
    if len(allowed) == 0:
        ant.alive = False
        return []
    weights = [ (tau_row[k] ** alpha) * ((1.0/cost) ** beta) for _,cost,k in allowed ]
    total = math.fsum(weights)
    if total <= 0.0:
        return [(nb, 1.0/len(allowed)) for nb,_,_ in allowed]
    return [(nb, w/total) for (nb,_,_),w in zip(allowed,weights)]


def sample_next(probabilities, rng):
    """ Roulette-wheel draw of a node from [(Node, p)] using one uniform
        number from the numpy Generator rng """
    if len(probabilities) == 0:
        raise ContractError("Cannot sample from an empty distribution")
    cumulative = list(itertools.accumulate(p for _,p in probabilities))
    if abs(cumulative[-1] - 1.0) > 1e-9:
        raise ContractError("Probabilities sum to {}, not 1".format(cumulative[-1]))
    ix = bisect.bisect_right(cumulative, rng.random() * cumulative[-1])
    return probabilities[min(ix, len(probabilities)-1)][0]


# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
# Pheromone update

def length_deposit(path, q):
    """ Delta tau = Q / L """
    if path.cost <= 0:
        raise ContractError("Cannot deposit on a path of length 0")
    return q / path.cost


def deposit_amount(deposit, q):
    """ Per-edge amount of one Deposit under its rule, times its weight """
    if deposit.rule == "length":
        amount = length_deposit(deposit.path, q)
    elif deposit.rule == "turn-penalized":
        from pfaco.strategies import ltos_deposit
        amount = ltos_deposit(deposit.path, q)
    else:
        raise ParameterError("Unknown deposit rule '{}'".format(deposit.rule))
    return amount * deposit.weight


def deposit(field, deposits, q):
    """ Adds every deposit's amount to each directed edge its path traverses;
        returns the new field (no evaporation) """
    values = np.array(field.values)
    for entry in deposits:
        entry = Deposit(*entry)
        edges = entry.path.edges
        if len(edges) == 0:
            continue
        ys = [i.y for i,_ in edges]
        xs = [i.x for i,_ in edges]
        ks = [DIRECTION_INDEX[(j.x-i.x, j.y-i.y)] for i,j in edges]
        if not np.all(field.legal[ys,xs,ks]):
            raise ContractError("Deposit path uses an edge that is absent from the field")
        np.add.at(values, (ys,xs,ks), deposit_amount(entry, q))
    return field.with_values(values)


def evaporate_and_deposit(field, deposits, rho, q=2.0, bounds=None):
    """ tau' = (1-rho) tau + sum of deposits, optionally clamped to
        bounds = (tau_min, tau_max) on all legal edges """
    if not 0.0 < rho < 1.0:
        raise ParameterError("Evaporation rate rho must lie in (0,1), got {}".format(rho))
    evaporated = field.with_values(field.values * (1.0-rho))
    updated = deposit(evaporated, deposits, q)
    if bounds is not None:
        tau_min, tau_max = bounds
        updated = updated.with_values(np.clip(updated.values, tau_min, tau_max))
    return updated


def mmas_bounds(best_cost, q, rho, gridmap):
    """ MAX-MIN trail limits from the best-so-far cost:
        tau_max = Q / (rho * L_best), tau_min = tau_max / (2 * width * height) """
    if best_cost <= 0:
        raise ParameterError("Best cost must be positive to derive MMAS bounds")
    tau_max = q / (rho * best_cost)
    return tau_max / (2.0 * gridmap.width * gridmap.height), tau_max
