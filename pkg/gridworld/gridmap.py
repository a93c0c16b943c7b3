#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""

Occupancy-grid model for 8-connected path planning: maps, nodes, instances,
paths, movement rules and path metrics

Coordinates have their origin at the top-left cell, x runs rightward (columns)
and y runs downward (rows), matching the row-major text map files.

"""

# Imports
import math
from typing import NamedTuple
import numpy as np
from scipy import ndimage


# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
# Movement model

# Fixed direction order as (dx, dy); neighbors, pheromone edges and oracle
# tie-breaking all follow this order
DIRECTIONS = ((0,1), (0,-1), (1,1), (1,-1), (-1,1), (-1,-1), (1,0), (-1,0))
DIRECTION_INDEX = {d: k for k,d in enumerate(DIRECTIONS)}
SQRT2 = math.sqrt(2.0)


# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
# Exceptions

class InvalidMapError(ValueError):
    pass

class InvalidNodeError(ValueError):
    pass

class InvalidPathError(ValueError):
    pass

class InvalidInstanceError(ValueError):
    pass


# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
# Classes

class Node(NamedTuple):
    """ Grid cell, x = column index, y = row index """
    x: int
    y: int


class GridMap(object):
    """ Immutable occupancy grid.

        Cells are stored as a read-only boolean numpy array of shape
        (height, width), True = obstacle. Properties:
        * width, height: map dimensions in cells
        * cells: the boolean obstacle array
        * free_cells: list of free Nodes in row-major order
        * obstacle_density: fraction of cells that are obstacles
    """

    def __init__(self, width, height, cells):
        """ - width, height: dimensions in cells (both >= 2)
            - cells: row-major sequence of width*height booleans, or a
              (height, width) array (True = obstacle)
        """
        super(GridMap, self).__init__()
        width, height = int(width), int(height)
        if width < 2 or height < 2:
            raise InvalidMapError("Map must be at least 2x2 cells, got {}x{}".format(width, height))
        cells = np.asarray(cells, dtype=bool)
        if cells.size != width*height:
            raise InvalidMapError("Map of {}x{} needs {} cells, got {}".format(width, height, width*height, cells.size))
        self._width = width
        self._height = height
        self._cells = cells.reshape((height,width)).copy()
        self._cells.flags.writeable = False
        self._neighbor_table = None

    @classmethod
    def from_array(cls, array):
        """ Builds a map from a (height, width) boolean array """
        array = np.asarray(array, dtype=bool)
        return cls(array.shape[1], array.shape[0], array)

    @classmethod
    def empty(cls, width, height=None):
        """ Obstacle-free map """
        height = width if height is None else height
        return cls(width, height, np.zeros((height,width), dtype=bool))

    def __str__(self):
        """ Returns the map as '.'/'#' rows """
        return "\n".join( "".join("#" if c else "." for c in row) for row in self._cells )

    def __repr__(self):
        return "GridMap({}x{}, {} obstacles)".format(self._width, self._height, self.n_obstacles)

    def __eq__(self, other):
        if not isinstance(other, GridMap):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self._cells, other._cells))

    def __hash__(self):
        return hash((self._width, self._height, self._cells.tobytes()))

    @property
    def width(self):
        return self._width

    @property
    def height(self):
        return self._height

    @property
    def shape(self):
        """ (height, width), the numpy array shape """
        return self._height, self._width

    @property
    def cells(self):
        return self._cells

    @property
    def n_obstacles(self):
        return int(self._cells.sum())

    @property
    def obstacle_density(self):
        return self.n_obstacles / float(self._width*self._height)

    @property
    def free_cells(self):
        """ Free nodes in row-major order """
        ys,xs = np.nonzero(~self._cells)
        return [Node(int(x),int(y)) for y,x in zip(ys,xs)]

    def in_bounds(self, node):
        return 0 <= node[0] < self._width and 0 <= node[1] < self._height

    def is_free(self, node):
        """ True when node is inside the map and not an obstacle """
        return self.in_bounds(node) and not self._cells[node[1],node[0]]

    @property
    def neighbor_table(self):
        """ Per-cell list of (Node, step_cost, direction index) of legal moves,
            indexed [y][x]; built once and shared by all searches """
        if self._neighbor_table is None:
            table = []
            for y in range(self._height):
                row = []
                for x in range(self._width):
                    moves = []
                    if not self._cells[y,x]:
                        for k,(dx,dy) in enumerate(DIRECTIONS):
                            nb = Node(x+dx, y+dy)
                            if is_legal_move(self, Node(x,y), nb):
                                moves.append( (nb, SQRT2 if dx and dy else 1.0, k) )
                    row.append(tuple(moves))
                table.append(tuple(row))
            self._neighbor_table = tuple(table)
        return self._neighbor_table

    @property
    def move_mask(self):
        """ Boolean array (height, width, 8): True where the directed edge
            from cell (y,x) in direction k is a legal move """
        mask = np.zeros((self._height,self._width,len(DIRECTIONS)), dtype=bool)
        for y,row in enumerate(self.neighbor_table):
            for x,moves in enumerate(row):
                for _,_,k in moves:
                    mask[y,x,k] = True
        return mask


class Instance(object):
    """ A planning query: map, start node S and goal node T """

    def __init__(self, gridmap, start, goal):
        super(Instance, self).__init__()
        self._map = gridmap
        self._start = Node(*start)
        self._goal = Node(*goal)
        self.validate()

    def validate(self):
        """ Raises InvalidInstanceError when start/goal are equal, out of bounds or blocked """
        if self._start == self._goal:
            raise InvalidInstanceError("Start and goal are the same node {}".format(tuple(self._start)))
        for name,node in (("start",self._start), ("goal",self._goal)):
            if not self._map.in_bounds(node):
                raise InvalidInstanceError("The {} node {} is outside the {}x{} map".format(name, tuple(node), self._map.width, self._map.height))
            if not self._map.is_free(node):
                raise InvalidInstanceError("The {} node {} is an obstacle".format(name, tuple(node)))

    def __str__(self):
        return "Instance {}x{} map, S={}, T={}".format(self._map.width, self._map.height, tuple(self._start), tuple(self._goal))

    def __repr__(self):
        return "Instance(S={}, T={})".format(tuple(self._start), tuple(self._goal))

    def __eq__(self, other):
        if not isinstance(other, Instance):
            return NotImplemented
        return (self._map, self._start, self._goal) == (other._map, other._start, other._goal)

    def __hash__(self):
        return hash((self._map, self._start, self._goal))

    @property
    def map(self):
        return self._map

    @property
    def start(self):
        return self._start

    @property
    def goal(self):
        return self._goal


class Path(object):
    """ Validated, loop-free node sequence with its Euclidean cost (L) and
        number of turns. Build it with path_metrics() """

    def __init__(self, nodes, cost, turns):
        super(Path, self).__init__()
        self._nodes = tuple(Node(*n) for n in nodes)
        self._cost = float(cost)
        self._turns = int(turns)

    def __str__(self):
        return "Path: {} nodes, cost={:0.4f}, turns={}".format(len(self._nodes), self._cost, self._turns)

    def __repr__(self):
        return "Path({}, cost={:0.4f}, turns={})".format([tuple(n) for n in self._nodes], self._cost, self._turns)

    def __len__(self):
        return len(self._nodes)

    def __eq__(self, other):
        if not isinstance(other, Path):
            return NotImplemented
        return self._nodes == other._nodes

    def __hash__(self):
        return hash(self._nodes)

    @property
    def nodes(self):
        return self._nodes

    @property
    def cost(self):
        return self._cost

    @property
    def turns(self):
        return self._turns

    @property
    def quality(self):
        """ cost + turns, lower is better """
        return self._cost + self._turns

    @property
    def edges(self):
        """ Directed edges (i, j) in travel order """
        return list(zip(self._nodes[:-1], self._nodes[1:]))

    def reversed(self):
        return Path(self._nodes[::-1], self._cost, self._turns)


# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
# Functions

def euclid(a, b):
    """ Euclidean distance between two nodes """
    return math.hypot(a[0]-b[0], a[1]-b[1])


def is_legal_move(gridmap, a, b):
    """ True when b is one of the 8 neighbors of a, b is free, and a diagonal
        move does not cut a corner (both shared orthogonal cells free) """
    dx, dy = b[0]-a[0], b[1]-a[1]
    if (dx,dy) == (0,0) or abs(dx) > 1 or abs(dy) > 1:
        return False
    if not gridmap.is_free(b):
        return False
    if dx and dy:
        return gridmap.is_free((a[0]+dx,a[1])) and gridmap.is_free((a[0],a[1]+dy))
    return True


def neighbors(gridmap, at):
    """ Returns the legal moves from node 'at' as a list of (Node, step_cost),
        in the fixed direction order; step cost is 1 or sqrt(2) """
    if not gridmap.is_free(at):
        raise InvalidNodeError("Node {} is out of bounds or on an obstacle".format(tuple(at)))
    return [(nb,cost) for nb,cost,_ in gridmap.neighbor_table[at[1]][at[0]]]


def count_turns(nodes):
    """ Number of interior nodes where the incoming and outgoing step vectors differ """
    turns = 0
    for a,b,c in zip(nodes[:-2], nodes[1:-1], nodes[2:]):
        if (b[0]-a[0], b[1]-a[1]) != (c[0]-b[0], c[1]-b[1]):
            turns += 1
    return turns


def path_cost(nodes):
    """ Sum of Euclidean step costs """
    return sum( euclid(a,b) for a,b in zip(nodes[:-1], nodes[1:]) )


def path_metrics(nodes, gridmap):
    """ Validates a node sequence against the movement rules and returns it
        as a Path with cost and turn count """
    nodes = [Node(*n) for n in nodes]
    if len(nodes) < 1:
        raise InvalidPathError("A path needs at least one node")
    for n in nodes:
        if not gridmap.is_free(n):
            raise InvalidPathError("Path node {} is out of bounds or on an obstacle".format(tuple(n)))
    if len(set(nodes)) != len(nodes):
        raise InvalidPathError("Path visits a node twice")
    for k,(a,b) in enumerate(zip(nodes[:-1], nodes[1:])):
        if not is_legal_move(gridmap, a, b):
            raise InvalidPathError("Illegal step {} from {} to {}".format(k, tuple(a), tuple(b)))
    return Path(nodes, path_cost(nodes), count_turns(nodes))


def connected_components(gridmap):
    """ Labels free cells by connected component (0 = obstacle).

        A diagonal move needs both orthogonal cells free, so two cells are
        connected under the 8-move rule exactly when they are 4-connected.
        Returns (labels array (height, width), number of components)
    """
    labels, n = ndimage.label(~gridmap.cells)
    return labels, int(n)


def is_reachable(gridmap, a, b):
    """ True when a and b are free and lie in the same component """
    if not (gridmap.is_free(a) and gridmap.is_free(b)):
        return False
    labels,_ = connected_components(gridmap)
    return labels[a[1],a[0]] == labels[b[1],b[0]]
