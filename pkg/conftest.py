#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""

Shared pytest fixtures: obstacle-free maps and the C-trap instance

"""

# Imports
import os
import sys
import pytest

sys.path.insert(0, os.path.dirname(os.path.realpath(__file__)))

from gridworld import GridMap, Instance, Node, ctrap_instance


@pytest.fixture
def empty3():
    return GridMap.empty(3)


@pytest.fixture
def empty10():
    return GridMap.empty(10)


@pytest.fixture
def diagonal10(empty10):
    """ Empty 10x10 map, corner to corner """
    return Instance(empty10, Node(0,0), Node(9,9))


@pytest.fixture
def ctrap10():
    return ctrap_instance(10)


@pytest.fixture
def enclosed10():
    """ 10x10 map whose goal (8,8) is walled in """
    cells = GridMap.empty(10).cells.copy()
    cells[7,7:10] = True
    cells[7:10,7] = True
    return Instance(GridMap.from_array(cells), Node(0,0), Node(8,8))
