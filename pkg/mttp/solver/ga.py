"""
Genetic algorithm over travel matrices.

Each individual is a travel matrix built with the swapping method. A
generation keeps the best `elite` individuals and refills the population
with children: crossover of two elites, then (with probability
`mutation_prob`) mutation. Fitness is the total number of trips. The
schedule is only searched for the incumbent; an incumbent without a
schedule is banned with an infinite fitness.
"""

import logging
import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from mttp.errors import NoFeasibleSolutionError, SizeMismatchError
from mttp.models.tournament import (
    MAX_RUN, InstanceSize, ScheduleMatrix, Tournament, TravelMatrix, count_trips_total,
)
from mttp.solver.patterns import (
    build_from_seeds, build_individual, conflicts_with, draw_seed, longest_run, make_rng, SEED_LIMIT,
)
from mttp.solver.scheduler import DEFAULT_NODE_BUDGET, Scheduler

logger = logging.getLogger(__name__)

UNSCHEDULABLE = math.inf
MUTATION_ATTEMPTS = 100


class GAParams(BaseModel):
    """Run parameters; the defaults are the four-individual, keep-two setup."""
    model_config = ConfigDict(frozen=True)

    population: int = Field(4, ge=2)
    elite: int = Field(2, ge=1)
    mutation_prob: float = Field(0.8, ge=0.0, le=1.0)
    max_iterations: int = Field(5000, ge=0)
    target: Optional[int] = Field(None, ge=0)
    node_budget: Optional[int] = Field(DEFAULT_NODE_BUDGET, ge=1)
    seed: int = Field(0, ge=0, lt=SEED_LIMIT)

    @model_validator(mode='after')
    def _elite_below_population(self):
        if self.elite >= self.population:
            raise ValueError(f"elite ({self.elite}) must be smaller than population ({self.population})")
        return self


class Schedulability(str, Enum):
    UNKNOWN = 'Unknown'
    YES = 'Yes'
    NO = 'No'


@dataclass(frozen=True)
class Individual:
    travel: TravelMatrix
    fitness: Optional[float] = None
    schedulable: Schedulability = Schedulability.UNKNOWN
    schedule: Optional[ScheduleMatrix] = None

    @property
    def partner_map(self):
        return self.travel.partners

    @property
    def size(self):
        return self.travel.size

    def tournament(self):
        return Tournament(self.size, self.travel, self.schedule)


@dataclass(frozen=True)
class EvolutionResult:
    best: Individual
    history: Tuple[float, ...]
    iterations: int
    mutations: int = 0
    mutation_fallbacks: int = 0
    banned: int = 0

    @property
    def tournament(self):
        return self.best.tournament()

    @property
    def fallback_rate(self):
        return self.mutation_fallbacks / self.mutations if self.mutations else 0.0


def evaluate(individual):
    """Fitness is the total number of trips; schedulability is left for later."""
    return replace(individual, fitness=count_trips_total(individual.travel),
                   schedulable=Schedulability.UNKNOWN, schedule=None)


def flip_week(travel, team, week):
    """
    Flip `team`'s venue in first-half `week` and in its mirrored week, and do
    the same for the team's complement partner. Exactly four cells change.
    """
    size = travel.size
    if not 0 <= week < size.half:
        raise ValueError(f"Week must lie in the first half (0..{size.half - 1}), got {week}")
    partner = travel.partner_of(team)
    if partner is None:
        raise ValueError(f"Team {team + 1} has no complement partner")
    bits = travel.bits.copy()
    for row in (team, partner):
        bits[row, week] ^= 1
        bits[row, week + size.half] ^= 1
    return TravelMatrix(bits, travel.partners)


def _rows_feasible(travel, rows):
    for row in rows:
        if longest_run(travel.bits[row]) > MAX_RUN:
            return False
        for other in range(travel.n):
            if other != row and np.array_equal(travel.bits[other], travel.bits[row]):
                return False
    return True


def try_mutate(individual, rng, attempts=MUTATION_ATTEMPTS):
    """One mutation, or None when every sampled (team, week) breaks a constraint."""
    size = individual.size
    for _ in range(attempts):
        team = int(rng.integers(size.n))
        week = int(rng.integers(size.half))
        travel = flip_week(individual.travel, team, week)
        if _rows_feasible(travel, (team, travel.partner_of(team))):
            return Individual(travel)
    return None


def mutate(individual, rng, attempts=MUTATION_ATTEMPTS):
    """Mutate a random team and first-half week; returns the input if no move is feasible."""
    mutated = try_mutate(individual, rng, attempts)
    return mutated if mutated is not None else individual


def _inverse_fitness(fitness):
    if fitness is None or math.isinf(fitness):
        return 0.0
    return math.inf if fitness <= 0 else 1.0 / fitness


def crossover_share(fitness_a, fitness_b, size):
    """Number of seed rows taken from the first parent, weighted by inverse fitness."""
    weight_a, weight_b = _inverse_fitness(fitness_a), _inverse_fitness(fitness_b)
    if weight_a == weight_b:
        share = 0.5
    elif math.isinf(weight_a):
        share = 1.0
    elif math.isinf(weight_b):
        share = 0.0
    else:
        share = weight_a / (weight_a + weight_b)
    rows = math.floor(size.pairs * share + 0.5)
    return min(max(rows, 1), size.pairs - 1)


def _take_rows(source, count, chosen, rng):
    taken = 0
    for row in rng.permutation(source.n):
        if taken == count:
            break
        candidate = source.bits[row]
        if not conflicts_with(candidate, chosen):
            chosen.append(np.array(candidate, dtype=np.int8))
            taken += 1


def crossover(a, b, rng):
    """
    Child whose seed rows are drawn from both parents, then completed by the
    swapping method. Rows that repeat or complement an already chosen row
    are skipped; any shortfall is filled with fresh random sequences.
    """
    if a.travel.n != b.travel.n or a.travel.weeks != b.travel.weeks:
        raise SizeMismatchError(f"Cannot cross n={a.travel.n} with n={b.travel.n}")
    size = a.size
    from_a = crossover_share(a.fitness, b.fitness, size)
    chosen = []
    _take_rows(a.travel, from_a, chosen, rng)
    _take_rows(b.travel, size.pairs - from_a, chosen, rng)
    while len(chosen) < size.pairs:
        chosen.append(draw_seed(size, rng, chosen))
    return Individual(build_from_seeds(chosen))


def _rank(population):
    return sorted(population, key=lambda individual: individual.fitness)


def _pick_parents(elites, rng):
    if len(elites) == 1:
        return elites[0], elites[0]
    first, second = rng.choice(len(elites), size=2, replace=False)
    return elites[int(first)], elites[int(second)]


class _Run:
    """Mutable bookkeeping for one evolve() call."""

    def __init__(self, scheduler):
        self.scheduler = scheduler
        self.candidate = None
        self.banned = 0
        self.mutations = 0
        self.mutation_fallbacks = 0

    def settle(self, population):
        """Schedule the incumbent, banning it until a schedulable one is on top."""
        population = _rank(population)
        while population[0].schedulable == Schedulability.UNKNOWN and not math.isinf(population[0].fitness):
            top = population[0]
            if self.candidate is None or top.fitness < self.candidate.fitness:
                self.candidate = top
            outcome = self.scheduler.build_schedule(top.travel)
            if outcome.feasible:
                population[0] = replace(top, schedulable=Schedulability.YES, schedule=outcome.schedule)
            else:
                logger.info(f"Banned unschedulable incumbent with {top.fitness} trips")
                self.banned += 1
                population[0] = replace(top, schedulable=Schedulability.NO, fitness=UNSCHEDULABLE)
                population = _rank(population)
        return population


def _incumbent(population):
    top = population[0]
    return top if top.schedulable == Schedulability.YES else None


def evolve(size, params=None, scheduler=None, on_iteration=None):
    """
    Run the genetic algorithm and return the best schedulable individual.

    `on_iteration(iteration, population, best)` is called after the initial
    population (iteration 0) and after every generation.
    """
    size = size if isinstance(size, InstanceSize) else InstanceSize(size)
    params = params or GAParams()
    run = _Run(scheduler or Scheduler(params.node_budget))
    rng = make_rng(params.seed)

    population = [evaluate(Individual(build_individual(size, rng))) for _ in range(params.population)]
    population = run.settle(population)
    best = _incumbent(population)
    history = [best.fitness if best else UNSCHEDULABLE]
    if on_iteration:
        on_iteration(0, population, best)

    iteration = 0
    while iteration < params.max_iterations:
        if best is not None and params.target is not None and best.fitness <= params.target:
            break
        iteration += 1
        elites = population[:params.elite]
        children = []
        for _ in range(params.population - params.elite):
            mother, father = _pick_parents(elites, rng)
            child = crossover(mother, father, rng)
            if rng.random() < params.mutation_prob:
                run.mutations += 1
                mutated = try_mutate(child, rng)
                if mutated is None:
                    run.mutation_fallbacks += 1
                else:
                    child = mutated
            children.append(evaluate(child))

        population = run.settle(elites + children)
        incumbent = _incumbent(population)
        if incumbent is not None and (best is None or incumbent.fitness < best.fitness):
            logger.debug(f"Iteration {iteration}: new incumbent with {incumbent.fitness} trips")
        if incumbent is not None:
            best = incumbent
        history.append(best.fitness if best else UNSCHEDULABLE)
        if on_iteration:
            on_iteration(iteration, population, best)

    if best is None:
        raise NoFeasibleSolutionError(run.candidate, history)

    logger.info(f"n={size.n} seed={params.seed}: best {best.fitness} trips after {iteration} iterations "
                f"({run.banned} banned, mutation fallback rate {run.mutation_fallbacks}/{run.mutations})")
    return EvolutionResult(best=best, history=tuple(history), iterations=iteration,
                           mutations=run.mutations, mutation_fallbacks=run.mutation_fallbacks,
                           banned=run.banned)
