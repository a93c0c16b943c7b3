#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""

Tests of ADPI, PSPRS and LTOS and of complete PFACO runs

"""

# Imports
import math
import types
import numpy as np
import pytest
from gridworld import GridMap, Instance, Node, euclid, path_metrics, generate_dataset, sample_instances
from searchoracle import astar
from colonycore import ColonyParams, ParameterError, PheromoneField, ant_rng, construct_tour, run_colony
from benchharness import mann_whitney_u
import pfaco.strategies as strategies
from pfaco import DegenerateInstanceError, DegeneratePathError
from pfaco import EliteArchive, IterationPool, adpi_init, build_new_set, psprs_update
from pfaco import ltos_smooth, ltos_step, ltos_deposit, run_pfaco

SQ2 = math.sqrt(2)


def staircase_paths(gridmap, count, seed):
    """ Random monotone staircases from (0,0) to the opposite corner of an empty map """
    rng = np.random.default_rng(seed)
    goal = (gridmap.width-1, gridmap.height-1)
    paths = []
    for _ in range(count):
        nodes = [(0,0)]
        while nodes[-1] != goal:
            x, y = nodes[-1]
            moves = [(dx,dy) for dx,dy in ((1,0),(0,1),(1,1)) if x+dx <= goal[0] and y+dy <= goal[1]]
            dx, dy = moves[int(rng.integers(0,len(moves)))]
            nodes.append( (x+dx,y+dy) )
        paths.append( path_metrics(nodes, gridmap) )
    return paths


def random_tours(instance, count, seed):
    """ Up to 'count' successful goal-biased random tours """
    field = adpi_init(instance)
    params = ColonyParams(ants=1, iterations=1, alpha=2.0, beta=1.0)
    paths = []
    for m in range(count*20):
        path = construct_tour(instance, field, params, ant_rng(seed, 0, m))
        if path is not None:
            paths.append(path)
        if len(paths) == count:
            break
    return paths


# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
# ADPI

def test_adpi_on_diagonal(diagonal10):
    field = adpi_init(diagonal10)
    assert field.tau((4,4), (5,5)) == pytest.approx(2.0, abs=1e-12)
    assert field.tau((8,0), (9,0)) == pytest.approx(math.sqrt(2), abs=1e-5)
    assert field.tau((1,1), (0,0)) == pytest.approx(1.0, abs=1e-12)
    values = field.node_values()
    assert values[9,9] == pytest.approx(2.0)
    assert values[9,9] == pytest.approx(values.max())


def brute_force_adpi(instance, i, j):
    S, T = instance.start, instance.goal
    a = 2.0 if euclid(i,T) > euclid(j,T) else 1.0
    return a * euclid(S,T) / (euclid(S,j) + euclid(j,T))


def test_adpi_matches_direct_evaluation():
    instances = []
    for size in (10, 15, 20):
        instances += sample_instances(generate_dataset(size, 5), 7, size)
    for inst in instances[:20]:
        field = adpi_init(inst)
        assert field.legal.sum() == inst.map.move_mask.sum()
        for (i,j),tau in field.edges():
            assert tau == pytest.approx(brute_force_adpi(inst, i, j), abs=1e-12)


def test_adpi_needs_distinct_endpoints(empty10):
    degenerate = types.SimpleNamespace(map=empty10, start=Node(3,3), goal=Node(3,3))
    with pytest.raises(DegenerateInstanceError):
        adpi_init(degenerate)


# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
# PSPRS

def test_archive_keeps_best_distinct_solutions(empty10):
    paths = staircase_paths(empty10, 30, 1)
    archive = EliteArchive(3).absorb(paths + paths[:5])
    assert len(archive) == 3
    assert archive.capacity == 3
    ranked = sorted(set(paths), key=lambda p: (p.quality, p.cost, p.nodes))
    assert list(archive.solutions) == ranked[:3]
    assert archive.best == ranked[0]
    assert len(set(p.nodes for p in archive.solutions)) == 3


def test_better_solution_displaces_worst(empty10):
    paths = staircase_paths(empty10, 10, 2)
    archive = EliteArchive(3, paths)
    optimum = astar(Instance(empty10, (0,0), (9,9))).path
    updated = archive.absorb([optimum])
    assert updated.best == optimum
    assert updated.solutions[1:] == archive.solutions[:2]
    assert archive.absorb([]).solutions == archive.solutions
    with pytest.raises(ParameterError):
        EliteArchive(0)


@pytest.mark.parametrize("ants,expected", [(30, 30), (15, 18)])
def test_new_set_size(empty10, ants, expected):
    params = ColonyParams(ants=ants, iterations=1, variant="PFACO")
    pool = IterationPool(staircase_paths(empty10, ants, 3))
    assert len(pool) == ants
    archive = EliteArchive(params.elite_count).absorb(pool.solutions)
    assert len(build_new_set(archive, pool, ants)) == expected


def test_first_update_fills_archive(diagonal10):
    params = ColonyParams(ants=30, iterations=1, variant="PFACO")
    pool = IterationPool(staircase_paths(diagonal10.map, 30, 4), gridmap=diagonal10.map)
    field = adpi_init(diagonal10)
    archive, updated = psprs_update(EliteArchive(params.elite_count), pool, field, params)
    assert len(archive) == 3
    assert archive.best == pool.top(1)[0]
    assert all(p in pool.solutions for p in archive.solutions)
    assert updated != field
    best_edge = archive.best.edges[0]
    assert updated.tau(*best_edge) > (1.0-params.rho) * field.tau(*best_edge)


def test_empty_pool_only_evaporates(diagonal10):
    params = ColonyParams(ants=30, iterations=1, variant="PFACO")
    field = adpi_init(diagonal10)
    archive, updated = psprs_update(EliteArchive(3), IterationPool(), field, params)
    assert len(archive) == 0
    assert np.allclose(updated.values, field.values * (1.0-params.rho))


def test_deposit_multiset_per_iteration(monkeypatch, diagonal10):
    records = []
    original = strategies.build_new_set
    def recording_new_set(archive, pool, ants):
        new_set = original(archive, pool, ants)
        records.append( (len(new_set), len(pool), len(archive)) )
        return new_set
    monkeypatch.setattr(strategies, "build_new_set", recording_new_set)
    run_pfaco(diagonal10, ColonyParams.for_variant("PFACO", 30, 5, seed=1))
    assert len(records) > 0
    for size, pool_size, archive_size in records:
        assert size == min(15, pool_size) + 5*archive_size
    assert any(size == 30 for size,_,_ in records)


# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
# LTOS

def test_bend_is_cut(empty10):
    smoothed = ltos_smooth(path_metrics([(0,0),(1,0),(1,1)], empty10), empty10)
    assert smoothed.nodes == ((0,0), (1,1))
    assert smoothed.cost == pytest.approx(SQ2)
    assert smoothed.turns == 0


def test_straight_path_is_a_fixpoint(empty10):
    path = path_metrics([(x,2) for x in range(8)], empty10)
    assert ltos_smooth(path, empty10) is path


def test_staircase_becomes_diagonal(empty10):
    smoothed = ltos_smooth(path_metrics([(0,0),(1,0),(1,1),(2,1),(2,2)], empty10), empty10)
    assert smoothed.nodes == ((0,0), (1,1), (2,2))
    assert smoothed.cost == pytest.approx(astar(Instance(empty10, (0,0), (2,2))).path.cost)


def test_offset_detour_becomes_diagonal(empty10):
    detour = path_metrics([(0,0),(1,0),(2,1),(2,2)] + [(k,k) for k in range(3,10)], empty10)
    assert detour.turns == 3
    smoothed = ltos_smooth(detour, empty10)
    assert smoothed.nodes == tuple((k,k) for k in range(10))
    assert smoothed.cost == pytest.approx(9*SQ2)


def test_far_apart_offsets_are_rewired(empty10):
    detour = path_metrics([(0,0)] + [(k+1,k) for k in range(9)] + [(9,9)], empty10)
    assert detour.cost == pytest.approx(2 + 8*SQ2)
    smoothed = ltos_smooth(detour, empty10)
    assert (smoothed.cost, smoothed.turns) == (pytest.approx(9*SQ2), 0)


def test_monotone_staircases_collapse_to_the_diagonal(empty10):
    for path in staircase_paths(empty10, 50, 5):
        smoothed = ltos_smooth(path, empty10)
        assert (smoothed.cost, smoothed.turns) == (pytest.approx(9*SQ2), 0)


def test_octile_segments():
    assert strategies.octile_segments((0,0), (3,1)) == [[((1,1),1), ((1,0),2)], [((1,0),2), ((1,1),1)]]
    assert strategies.octile_segments((4,4), (1,1)) == [[((-1,-1),3), ((0,-1),0)]]
    assert strategies.octile_segments((2,5), (2,1)) == [[((0,-1),0), ((0,-1),4)]]


def test_rewiring_respects_obstacles_on_ctrap(ctrap10):
    gridmap = ctrap10.map
    for path in random_tours(ctrap10, 10, 4):
        smoothed = ltos_smooth(path, gridmap)
        assert smoothed.quality <= path.quality + 1e-12
        assert path_metrics(smoothed.nodes, gridmap) == smoothed
        assert len(set(smoothed.nodes)) == len(smoothed.nodes)
        assert smoothed.cost >= astar(ctrap10).path.cost - 1e-9
        assert ltos_smooth(smoothed, gridmap) is smoothed


def test_corner_is_kept_next_to_obstacle():
    cells = np.zeros((3,3), dtype=bool)
    cells[0,1] = True
    gridmap = GridMap.from_array(cells)
    path = path_metrics([(0,0),(0,1),(1,1)], gridmap)
    assert ltos_smooth(path, gridmap) is path


def test_step_rewiring(empty10):
    trail = [Node(0,0), Node(1,0), Node(1,1)]
    assert ltos_step(trail, empty10)
    assert trail == [(0,0), (1,1)]
    assert not ltos_step(trail, empty10)


@pytest.mark.slow
def test_smoothing_is_monotone_legal_and_idempotent():
    checked = 0
    for nr,inst in enumerate(sample_instances(generate_dataset(10, 11), 400, 11)):
        if checked >= 1000:
            break
        gridmap = inst.map
        for path in random_tours(inst, 5, nr):
            if checked < 1000:
                smoothed = ltos_smooth(path, gridmap)
                assert smoothed.quality <= path.quality + 1e-12
                assert path_metrics(smoothed.nodes, gridmap) == smoothed
                assert smoothed.nodes[0] == path.nodes[0] and smoothed.nodes[-1] == path.nodes[-1]
                assert ltos_smooth(smoothed, gridmap) is smoothed
                checked += 1
    assert checked == 1000


def test_turn_penalized_deposit(empty10):
    gridmap = GridMap.empty(11)
    bent = path_metrics([(0,0),(1,0),(2,0),(3,0),(4,0),(4,1),(4,2),(4,3),(5,3),(6,3),(7,3)], gridmap)
    assert (bent.cost, bent.turns) == (pytest.approx(10.0), 2)
    assert ltos_deposit(bent, 2.0) == pytest.approx(1/6)
    straight = path_metrics([(x,0) for x in range(11)], gridmap)
    assert ltos_deposit(straight, 2.0) == pytest.approx(2.0/10)
    diagonal = path_metrics([(k,k) for k in range(10)], empty10)
    assert ltos_deposit(diagonal, 2.0) == pytest.approx(0.15713, abs=1e-5)
    with pytest.raises(DegeneratePathError):
        ltos_deposit(path_metrics([(0,0)], empty10), 2.0)


# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
# PFACO runs

def test_run_needs_pfaco_variant(diagonal10):
    with pytest.raises(ParameterError):
        run_pfaco(diagonal10, ColonyParams.for_variant("AS", 5, 5))


def test_pfaco_runs_are_deterministic(diagonal10):
    params = ColonyParams.for_variant("PFACO", 10, 5, seed=8)
    first = run_pfaco(diagonal10, params)
    assert first == run_pfaco(diagonal10, params)
    assert first == run_colony(diagonal10, params)


@pytest.mark.parametrize("switch", ["use_adpi", "use_psprs", "use_ltos", "per_step_smoothing"])
def test_ablations_and_per_step_smoothing(diagonal10, switch):
    value = switch == "per_step_smoothing"
    result = run_pfaco(diagonal10, ColonyParams.for_variant("PFACO", 15, 10, seed=3, **{switch: value}))
    assert result.succeeded
    assert path_metrics(result.best_path.nodes, diagonal10.map) == result.best_path
    assert result.best_path.cost >= 9*SQ2 - 1e-9


def test_smoothed_tours_on_empty_map_are_optimal(diagonal10):
    for seed in range(3):
        result = run_pfaco(diagonal10, ColonyParams.for_variant("PFACO", 5, 3, seed=seed))
        assert result.best_path.cost == pytest.approx(9*SQ2)
        assert result.best_path.turns == 0


@pytest.mark.slow
def test_pfaco_finds_the_diagonal(diagonal10):
    optimal = 0
    for seed in range(10):
        result = run_pfaco(diagonal10, ColonyParams.for_variant("PFACO", 15, 10, seed=seed))
        optimal += abs(result.best_path.cost - 9*SQ2) < 1e-6
    assert optimal >= 9


@pytest.mark.slow
def test_pfaco_beats_ant_system_on_ctrap(ctrap10):
    pfaco_runs = [run_colony(ctrap10, ColonyParams.for_variant("PFACO", 30, 20, seed=s)) for s in range(10)]
    as_runs = [run_colony(ctrap10, ColonyParams.for_variant("AS", 30, 20, seed=s)) for s in range(10)]
    assert all(r.succeeded for r in pfaco_runs + as_runs)
    # Convergence: PFACO after 5 iterations is at least as good as AS after 20
    assert np.mean([r.best_per_iteration[4] for r in pfaco_runs]) <= np.mean([r.best_per_iteration[19] for r in as_runs])
    pfaco_costs = [r.best_path.cost for r in pfaco_runs]
    as_costs = [r.best_path.cost for r in as_runs]
    assert np.mean(pfaco_costs) <= np.mean(as_costs)
    _, p = mann_whitney_u(pfaco_costs, as_costs)
    assert p < 0.05
    # Stability over repeats
    assert np.std(pfaco_costs) <= np.std(as_costs)
