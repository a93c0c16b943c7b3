#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""

Pheromone-focused ant colony (PFACO): distance-adaptive pheromone
initialisation (ADPI), elite reinforcement of promising solutions (PSPRS) and
turn-penalised deposition with lookahead parent rewiring (LTOS)

Solutions are ranked by quality = cost + turns, the quantity the
turn-penalised deposit Q/(L+Turn) rewards.

"""

# Imports
import itertools
import numpy as np
from gridworld import DIRECTIONS, SQRT2, Node, euclid, is_legal_move, count_turns, path_metrics
from colonycore import ParameterError, PheromoneField, Deposit
from colonycore import evaporate_and_deposit, initial_field, drive_colony


# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
# Settings

ELITE_REPLICATION = 5


# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
# Exceptions

class DegenerateInstanceError(ValueError):
    pass

class DegeneratePathError(ValueError):
    pass


# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
# Classes

def solution_rank(path):
    """ Sort key: quality first, then cost, then the node sequence """
    return (path.quality, path.cost, path.nodes)


class EliteArchive(object):
    """ The best 'capacity' distinct solutions found so far, best first """

    def __init__(self, capacity, solutions=()):
        super(EliteArchive, self).__init__()
        if int(capacity) < 1:
            raise ParameterError("Archive capacity must be at least 1, got {}".format(capacity))
        self._capacity = int(capacity)
        unique = {}
        for path in solutions:
            unique.setdefault(path.nodes, path)
        self._solutions = tuple(sorted(unique.values(), key=solution_rank)[:self._capacity])

    def __str__(self):
        return "EliteArchive: {}/{} solutions, best quality {}".format(
            len(self._solutions), self._capacity, "-" if self.best is None else "{:0.4f}".format(self.best.quality) )

    def __len__(self):
        return len(self._solutions)

    @property
    def capacity(self):
        return self._capacity

    @property
    def solutions(self):
        return self._solutions

    @property
    def best(self):
        return self._solutions[0] if self._solutions else None

    def absorb(self, paths):
        """ New archive holding the best distinct solutions of self and paths """
        return EliteArchive(self._capacity, self._solutions + tuple(paths))


class IterationPool(object):
    """ Successful (smoothed) solutions of one iteration """

    def __init__(self, solutions=(), gridmap=None):
        """ - solutions: Paths of the iteration's successful ants
            - gridmap: Optional, when given every entry is re-validated against it
        """
        super(IterationPool, self).__init__()
        solutions = tuple(solutions)
        if gridmap is not None:
            solutions = tuple(path_metrics(p.nodes, gridmap) for p in solutions)
        self._solutions = solutions

    def __len__(self):
        return len(self._solutions)

    @property
    def solutions(self):
        return self._solutions

    def top(self, n):
        """ The n best solutions (duplicates kept) """
        return sorted(self._solutions, key=solution_rank)[:int(n)]


# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
# ADPI

def adpi_init(instance):
    """ tau0_ij = a * Euc(S,T) / (Euc(S,j) + Euc(j,T)), with a = 2 when j is
        closer to T than i and a = 1 otherwise; absent on illegal edges """
    gridmap, S, T = instance.map, instance.start, instance.goal
    if S == T:
        raise DegenerateInstanceError("Start and goal coincide at {}".format(tuple(S)))
    legal = gridmap.move_mask
    ys, xs = np.mgrid[0:gridmap.height, 0:gridmap.width]
    e_st = euclid(S, T)
    d_it = np.hypot(xs-T.x, ys-T.y)
    values = np.zeros(legal.shape)
    for k,(dx,dy) in enumerate(DIRECTIONS):
        jx, jy = xs+dx, ys+dy
        d_jt = np.hypot(jx-T.x, jy-T.y)
        d_sj = np.hypot(jx-S.x, jy-S.y)
        a = np.where(d_it > d_jt, 2.0, 1.0)
        values[:,:,k] = a * e_st / (d_sj + d_jt)
    return PheromoneField(values, legal)


# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
# PSPRS

def build_new_set(archive, pool, ants):
    """ Deposit multiset: best ceil(M/2) pool solutions plus every archive
        solution replicated five times """
    top_quality = pool.top( -(-int(ants) // 2) )
    return top_quality + [p for p in archive.solutions for _ in range(ELITE_REPLICATION)]


def psprs_update(archive, pool, field, params):
    """ Absorbs the pool into the archive and updates the field once with
        the New_Set under the turn-penalised rule. An empty pool evaporates
        only and leaves the archive unchanged. Returns (archive, field). """
    if len(pool) == 0:
        return archive, evaporate_and_deposit(field, [], params.rho, params.q)
    archive = archive.absorb(pool.solutions)
    new_set = build_new_set(archive, pool, params.ants)
    field = evaporate_and_deposit(field, [Deposit(p,"turn-penalized") for p in new_set], params.rho, params.q)
    return archive, field


# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
# LTOS

def _removal_gain(nodes, k):
    """ Decrease of cost + turns when interior node k is dropped (its
        successor rewired to its predecessor); only the local window changes """
    a, b, c = nodes[k-1], nodes[k], nodes[k+1]
    d_cost = euclid(a,b) + euclid(b,c) - euclid(a,c)
    before = nodes[max(0,k-2):k+3]
    after = nodes[max(0,k-2):k] + nodes[k+1:k+3]
    return d_cost + count_turns(before) - count_turns(after)


def _drop_pass(nodes, gridmap):
    """ Drops interior nodes whose neighbors are mutually legal when that
        strictly lowers cost + turns; returns True when a node was dropped """
    dropped = False
    k = 1
    while k < len(nodes)-1:
        if is_legal_move(gridmap, nodes[k-1], nodes[k+1]) and _removal_gain(nodes, k) > 1e-12:
            del nodes[k]
            dropped = True
        else:
            k += 1
    return dropped


def octile_segments(a, b):
    """ The move plans from a to b with the fewest turns: all diagonal steps
        then all straight steps, and the reverse order. Each plan is a list
        of (step, count); a single plan when b is straight or diagonal from a. """
    dx, dy = b[0]-a[0], b[1]-a[1]
    sx, sy = (dx > 0) - (dx < 0), (dy > 0) - (dy < 0)
    n_diagonal = min(abs(dx), abs(dy))
    n_straight = max(abs(dx), abs(dy)) - n_diagonal
    diagonal = ((sx,sy), n_diagonal)
    straight = ((sx,0) if abs(dx) > abs(dy) else (0,sy), n_straight)
    if n_diagonal == 0 or n_straight == 0:
        return [[diagonal, straight]]
    return [[diagonal, straight], [straight, diagonal]]


def _walk_segment(a, plan, gridmap):
    """ Nodes of a move plan from a, or None as soon as a step is illegal """
    nodes = [Node(*a)]
    for (mx,my),count in plan:
        for _ in range(count):
            nxt = Node(nodes[-1].x+mx, nodes[-1].y+my)
            if not is_legal_move(gridmap, nodes[-1], nxt):
                return None
            nodes.append(nxt)
    return nodes


def _rewire_pass(nodes, gridmap):
    """ Lookahead rewiring: for node i, the farthest later node j that can
        be reached over an octile segment with a strict decrease of
        cost + turns gets node i as its new parent, and the nodes between
        are dropped. Returns True when the path changed. """
    changed = False
    i = 0
    while i < len(nodes)-2:
        n = len(nodes)
        step_costs = [0.0] + list(itertools.accumulate(euclid(a,b) for a,b in zip(nodes[:-1], nodes[1:])))
        is_turn = [0] + [ int((b[0]-a[0], b[1]-a[1]) != (c[0]-b[0], c[1]-b[1]))
                          for a,b,c in zip(nodes[:-2], nodes[1:-1], nodes[2:]) ] + [0]
        turns_upto = [0] + list(itertools.accumulate(is_turn))
        position = {node: k for k,node in enumerate(nodes)}
        head = nodes[i-1:i]

        rewired = False
        for j in range(n-1, i+1, -1):
            old_cost = step_costs[j] - step_costs[i]
            old_turns = turns_upto[j+1] - turns_upto[i]
            dx, dy = abs(nodes[j][0]-nodes[i][0]), abs(nodes[j][1]-nodes[i][1])
            shortest = min(dx,dy)*SQRT2 + abs(dx-dy)
            if old_cost - shortest + old_turns <= 1e-12:
                continue
            tail = nodes[j+1:j+2]
            for plan in octile_segments(nodes[i], nodes[j]):
                segment = _walk_segment(nodes[i], plan, gridmap)
                if segment is None:
                    continue
                if any(not i < position.get(node, i+1) < j for node in segment[1:-1]):
                    continue
                gain = old_cost - shortest + count_turns(head + nodes[i:j+2]) - count_turns(head + segment + tail)
                if gain > 1e-12:
                    nodes[i:j+1] = segment
                    rewired = changed = True
                    break
            if rewired:
                break
        if not rewired:
            i += 1
    return changed


def ltos_smooth(path, gridmap):
    """ Lookahead parent rewiring until a fixpoint: interior nodes are dropped
        when their neighbors are mutually legal, and a node is rewired to a
        later node over an octile segment, whenever that strictly lowers
        cost + turns. """
    nodes = list(path.nodes)
    rewired = False
    while True:
        dropped = _drop_pass(nodes, gridmap)
        shortcut = _rewire_pass(nodes, gridmap)
        rewired = rewired or dropped or shortcut
        if not (dropped or shortcut):
            break
    if not rewired:
        return path
    return path_metrics(nodes, gridmap)


def ltos_step(trail, gridmap):
    """ Per-step rewiring during construction: drops the parent of the
        newest node when that strictly lowers cost + turns. Mutates trail,
        returns True when a node was dropped. """
    k = len(trail)-2
    if k < 1:
        return False
    if is_legal_move(gridmap, trail[k-1], trail[k+1]) and _removal_gain(trail, k) > 1e-12:
        del trail[k]
        return True
    return False


def ltos_deposit(path, q):
    """ Delta tau = Q / (L + Turn) """
    denominator = path.cost + path.turns
    if denominator <= 0:
        raise DegeneratePathError("Cannot deposit on a single-node path")
    return q / denominator


# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
# PFACO run

def run_pfaco(instance, params, verbose=False):
    """ ADPI initialisation, then per iteration M tours, LTOS smoothing of
        every successful tour and one PSPRS update """
    if params.variant != "PFACO":
        raise ParameterError("run_pfaco needs variant PFACO, got {}".format(params.variant))
    instance.validate()
    field = initial_field(instance, params)
    archive = [EliteArchive(params.elite_count)]

    def update(field, tours, best, k):
        if params.use_psprs:
            archive[0], field = psprs_update(archive[0], IterationPool(tours), field, params)
            return field
        return evaporate_and_deposit(field, [Deposit(t,"turn-penalized") for t in tours], params.rho, params.q)

    smooth = ltos_smooth if params.use_ltos else None
    step_hook = None
    if params.use_ltos and params.per_step_smoothing:
        step_hook = lambda ant, gridmap: ltos_step(ant.trail, gridmap)
    return drive_colony(instance, params, field, update, smooth=smooth, step_hook=step_hook, verbose=verbose)
