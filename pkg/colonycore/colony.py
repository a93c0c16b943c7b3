#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""

Ant colony search on grid maps: parameters, tour construction, the iteration
loop and the classical variants (Ant System, Elite Ant System, MAX-MIN Ant
System). The PFACO variant is dispatched to pfaco.strategies.

"""

# Imports
import dataclasses
import time
from typing import List, Optional
import numpy as np
from tqdm import tqdm
from gridworld import Path, path_metrics
from .pheromone import PheromoneField, ParameterError, Deposit
from .pheromone import inverse_distance_field, transition_probabilities, sample_next
from .pheromone import evaporate_and_deposit, mmas_bounds
from .settings import load_settings


# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
# Settings

VARIANTS = ("AS", "EliteAS", "MMAS", "PFACO")
INITS = ("constant", "inverse-distance", "adpi")


# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
# Classes

@dataclasses.dataclass(frozen=True)
class ColonyParams:
    """ Colony configuration.

        ants (M), iterations (K), alpha, beta, rho, q (Q), variant, wall time
        cut-off in seconds, master seed and initial pheromone distribution.
        elite_weight overrides the Elite AS weight e (default ceil(0.1 M)).
        per_step_smoothing and the use_* switches only affect PFACO.
    """
    ants: int
    iterations: int
    alpha: float = 1.0
    beta: float = 3.0
    rho: float = 0.25
    q: float = 2.0
    variant: str = "AS"
    timeout_seconds: float = 120.0
    seed: int = 0
    init: str = "constant"
    elite_weight: Optional[int] = None
    per_step_smoothing: bool = False
    use_adpi: bool = True
    use_psprs: bool = True
    use_ltos: bool = True

    def __post_init__(self):
        if int(self.ants) < 1:
            raise ParameterError("Number of ants must be at least 1, got {}".format(self.ants))
        if int(self.iterations) < 1:
            raise ParameterError("Number of iterations must be at least 1, got {}".format(self.iterations))
        if self.alpha < 0 or self.beta < 0:
            raise ParameterError("alpha and beta must be nonnegative, got {} and {}".format(self.alpha, self.beta))
        if not 0.0 < self.rho < 1.0:
            raise ParameterError("Evaporation rate rho must lie in (0,1), got {}".format(self.rho))
        if self.q <= 0:
            raise ParameterError("Deposit constant q must be positive, got {}".format(self.q))
        if not self.timeout_seconds > 0:
            raise ParameterError("Timeout must be positive, got {}".format(self.timeout_seconds))
        if int(self.seed) < 0:
            raise ParameterError("Seed must be nonnegative, got {}".format(self.seed))
        if self.variant not in VARIANTS:
            raise ParameterError("Unknown variant '{}', valid are {}".format(self.variant, ", ".join(VARIANTS)))
        if self.init not in INITS:
            raise ParameterError("Unknown initialisation '{}', valid are {}".format(self.init, ", ".join(INITS)))
        if self.elite_weight is not None and self.elite_weight < 0:
            raise ParameterError("Elite weight must be nonnegative, got {}".format(self.elite_weight))

    @classmethod
    def for_variant(cls, variant, ants, iterations, settingsfile=None, **overrides):
        """ Params of a variant with the defaults from the settings file;
            keyword overrides win over the file """
        colonyparams,benchsettings = load_settings(settingsfile)
        if variant not in colonyparams:
            raise ParameterError("Unknown variant '{}', valid are {}".format(variant, ", ".join(VARIANTS)))
        kwargs = dict(colonyparams[variant])
        kwargs.setdefault("timeout_seconds", benchsettings["timeout_seconds"])
        kwargs.update({k:v for k,v in overrides.items() if v is not None})
        return cls(ants=int(ants), iterations=int(iterations), variant=variant, **kwargs)

    def replace(self, **changes):
        return dataclasses.replace(self, **changes)

    @property
    def elite_count(self):
        """ ceil(0.1 M) """
        return -(-int(self.ants) // 10)

    @property
    def top_count(self):
        """ ceil(M / 2) """
        return -(-int(self.ants) // 2)


@dataclasses.dataclass
class AntState:
    """ Position, tabu set and trail of one ant """
    current: object
    visited: set
    trail: list
    alive: bool = True

    @classmethod
    def at(cls, start):
        return cls(current=start, visited={start}, trail=[start])

    def move_to(self, node):
        self.current = node
        self.visited.add(node)
        self.trail.append(node)


@dataclasses.dataclass
class RunResult:
    """ Outcome of one colony run: best path, best-so-far cost per iteration
        (inf before the first success), wall time and success flags """
    best_path: Optional[Path]
    best_per_iteration: List[float]
    elapsed: float = dataclasses.field(default=0.0, compare=False)
    succeeded: bool = False
    timed_out: bool = False
    iterations_run: int = 0
    final_field: Optional[PheromoneField] = dataclasses.field(default=None, compare=False, repr=False)

    def __str__(self):
        if self.best_path is None:
            best = "no path"
        else:
            best = "cost={:0.4f}, turns={}".format(self.best_path.cost, self.best_path.turns)
        return "RunResult: {}, success={}, {} iterations, {:0.3f}s{}".format(
            best, self.succeeded, self.iterations_run, self.elapsed, " (timed out)" if self.timed_out else "" )


# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
# Functions

def ant_rng(seed, iteration, ant):
    """ Independent random stream for one ant in one iteration """
    return np.random.default_rng(np.random.SeedSequence(int(seed), spawn_key=(int(iteration), int(ant))))


def initial_field(instance, params):
    """ Initial pheromone field according to params.init """
    if params.init == "adpi" and params.use_adpi:
        from pfaco.strategies import adpi_init
        return adpi_init(instance)
    elif params.init == "inverse-distance":
        return inverse_distance_field(instance)
    return PheromoneField.uniform(instance.map, 1.0)


def construct_tour(instance, field, params, rng, step_hook=None):
    """ Walks one ant from start until it reaches the goal (returns the Path),
        hits a dead end or exceeds 3*width*height steps (returns None).
        step_hook(ant, gridmap) is called after every move. """
    gridmap, goal = instance.map, instance.goal
    ant = AntState.at(instance.start)
    for _ in range(3 * gridmap.width * gridmap.height):
        probabilities = transition_probabilities(field, ant, gridmap, params.alpha, params.beta)
        if not ant.alive:
            return None
        ant.move_to( sample_next(probabilities, rng) )
        if step_hook is not None:
            step_hook(ant, gridmap)
        if ant.current == goal:
            return path_metrics(ant.trail, gridmap)
    return None


def drive_colony(instance, params, field, update, smooth=None, step_hook=None, verbose=False):
    """ Iteration loop shared by all variants.

        Per iteration, M tours are built on the current field, successful
        tours are optionally passed through smooth(path, gridmap), and the
        field is replaced by update(field, tours, best_so_far, iteration).
        The run aborts with succeeded=False once the wall time exceeds
        params.timeout_seconds.
    """
    t0 = time.perf_counter()
    deadline = t0 + params.timeout_seconds
    gridmap = instance.map
    best = None
    curve = []
    timed_out = False

    with tqdm(total=params.iterations, desc="{} iterations".format(params.variant), unit="It", disable=not verbose) as bar:
        for k in range(params.iterations):
            tours = []
            for m in range(params.ants):
                if time.perf_counter() > deadline:
                    timed_out = True
                    break
                tour = construct_tour(instance, field, params, ant_rng(params.seed, k, m), step_hook)
                if tour is not None:
                    if smooth is not None:
                        tour = smooth(tour, gridmap)
                    tours.append(tour)
            if timed_out:
                break

            for tour in tours:
                if best is None or (tour.cost, tour.quality) < (best.cost, best.quality):
                    best = tour
            field = update(field, tours, best, k)
            curve.append(best.cost if best is not None else float("inf"))
            bar.update(1)

    iterations_run = len(curve)
    if len(curve) < params.iterations:
        fill = curve[-1] if curve else float("inf")
        curve.extend( [fill] * (params.iterations-len(curve)) )
    return RunResult( best_path=best, best_per_iteration=curve, elapsed=time.perf_counter()-t0,
                      succeeded=best is not None and not timed_out, timed_out=timed_out,
                      iterations_run=iterations_run, final_field=field )


def baseline_update(instance, params):
    """ Returns the pheromone update function of a classical variant:
        AS deposits every successful tour, Elite AS adds the global best with
        weight e, MMAS deposits the iteration best and clamps to its bounds """
    gridmap = instance.map
    rho, q = params.rho, params.q

    if params.variant == "AS":
        def update(field, tours, best, k):
            return evaporate_and_deposit(field, [Deposit(t,"length") for t in tours], rho, q)

    elif params.variant == "EliteAS":
        weight = params.elite_count if params.elite_weight is None else params.elite_weight
        def update(field, tours, best, k):
            deposits = [Deposit(t,"length") for t in tours]
            if best is not None and weight > 0:
                deposits.append( Deposit(best,"length",weight) )
            return evaporate_and_deposit(field, deposits, rho, q)

    elif params.variant == "MMAS":
        state = {"cost": None, "bounds": None}
        def update(field, tours, best, k):
            if best is not None and (state["cost"] is None or best.cost < state["cost"]):
                state["cost"] = best.cost
                state["bounds"] = mmas_bounds(best.cost, q, rho, gridmap)
            deposits = []
            if tours:
                deposits.append( Deposit(min(tours, key=lambda t: (t.cost, t.quality)), "length") )
            return evaporate_and_deposit(field, deposits, rho, q, bounds=state["bounds"])

    else:
        raise ParameterError("No baseline update for variant '{}'".format(params.variant))
    return update


def run_colony(instance, params, verbose=False):
    """ Runs K iterations of M ants of the configured variant on the instance """
    instance.validate()
    if params.variant == "PFACO":
        from pfaco.strategies import run_pfaco
        return run_pfaco(instance, params, verbose=verbose)
    field = initial_field(instance, params)
    return drive_colony(instance, params, field, baseline_update(instance, params), verbose=verbose)
