"""
Brute-force ground truth for tiny instances.

The search space is the one the GA explores: n/2 complement pairs of
feasible travel sequences. Pairs are enumerated cheapest first, so the first
schedulable combination gives the minimum.
"""

import logging
from dataclasses import dataclass
from itertools import combinations, permutations, product
from typing import Tuple

import numpy as np

from mttp.errors import InvalidInstanceError, MttpError
from mttp.models.tournament import InstanceSize, Tournament, TravelMatrix, count_trips_team
from mttp.solver.patterns import build_from_seeds, complement_classes
from mttp.solver.scheduler import Scheduler

logger = logging.getLogger(__name__)

MIN_TRIPS_SIZES = (4, 6)
SCHEDULABILITY_SIZES = (4,)


@dataclass(frozen=True)
class OracleResult:
    min_trips: int
    witnesses: Tuple[Tournament, ...]
    combinations_examined: int

    @property
    def witness(self):
        return self.witnesses[0]


def _supported(n, sizes):
    size = n if isinstance(n, InstanceSize) else InstanceSize(n)
    if size.n not in sizes:
        raise InvalidInstanceError(f"Exhaustive search supports n in {sizes}, got {size.n}")
    return size


def exhaustive_min_trips(n):
    """Minimum total trips over every schedulable complement-paired travel matrix."""
    size = _supported(n, MIN_TRIPS_SIZES)
    classes = complement_classes(size)
    costs = [count_trips_team(home) + count_trips_team(away) for home, away in classes]
    ranked = sorted(combinations(range(len(classes)), size.pairs),
                    key=lambda combo: (sum(costs[i] for i in combo), combo))

    scheduler = Scheduler(node_budget=None)
    best, witnesses, examined = None, [], 0
    for combo in ranked:
        total = sum(costs[i] for i in combo)
        if best is not None and total > best:
            break
        examined += 1
        travel = build_from_seeds([classes[i][0] for i in combo])
        outcome = scheduler.build_schedule(travel)
        if outcome.feasible:
            best = total
            witnesses.append(Tournament(size, travel, outcome.schedule))

    if best is None:
        raise MttpError(f"No schedulable travel matrix exists for n={size.n}")
    logger.info(f"Oracle n={size.n}: minimum {best} trips, {len(witnesses)} optimal pair sets, "
                f"{examined} of {len(ranked)} pair sets examined")
    return OracleResult(min_trips=best, witnesses=tuple(witnesses), combinations_examined=examined)


def perfect_matchings(teams):
    """Every way to split `teams` into unordered pairs."""
    teams = list(teams)
    if not teams:
        yield []
        return
    first, rest = teams[0], teams[1:]
    for index, partner in enumerate(rest):
        remaining = rest[:index] + rest[index + 1:]
        for matching in perfect_matchings(remaining):
            yield [(first, partner)] + matching


def exhaustive_schedulability(travel, n=4):
    """
    True iff some opponent assignment exists, found by trying every sequence
    of weekly matchings over the first half (the second half mirrors it).
    """
    size = _supported(n, SCHEDULABILITY_SIZES)
    bits = (travel if isinstance(travel, TravelMatrix) else TravelMatrix(travel)).bits
    if bits.shape != (size.n, size.weeks):
        raise InvalidInstanceError(f"Travel matrix is {bits.shape[0]}x{bits.shape[1]}, "
                                   f"expected {size.n}x{size.weeks}")

    matchings = list(perfect_matchings(range(size.n)))
    for weeks in product(matchings, repeat=size.half):
        met = set()
        for week, matching in enumerate(weeks):
            for i, j in matching:
                mirrored = week + size.half
                if (i, j) in met or bits[i, week] == bits[j, week] or bits[i, mirrored] == bits[j, mirrored]:
                    break
                met.add((i, j))
            else:
                continue
            break
        else:
            return True
    return False


def enumerate_travel_matrices(n):
    """Every valid complement-paired travel matrix, in every row order."""
    size = _supported(n, SCHEDULABILITY_SIZES)
    classes = complement_classes(size)
    for combo in combinations(classes, size.pairs):
        rows = [row for pair in combo for row in pair]
        for order in permutations(rows):
            yield TravelMatrix(np.vstack(order))
