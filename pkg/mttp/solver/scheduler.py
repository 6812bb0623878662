"""
Opponent assignment for a fixed travel matrix.

Only the first n-1 weeks are searched: week by week, teams are paired into a
perfect matching where every pair has opposite venues and no pair meets
twice. The second half repeats the first half's opponents; the mirrored
travel rows swap the venues.
"""

import logging
import threading
from collections import OrderedDict
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

import numpy as np

from mttp.errors import InvalidInstanceError, InvalidTravelMatrixError, ShapeError
from mttp.models.tournament import (
    InstanceSize, ScheduleMatrix, TravelMatrix, Violation, ViolationKind, validate_travel,
)

logger = logging.getLogger(__name__)

DEFAULT_NODE_BUDGET = 10 ** 6
DEFAULT_CACHE_LIMIT = 4096


class ScheduleStatus(str, Enum):
    FEASIBLE = 'Feasible'
    INFEASIBLE = 'Infeasible'


@dataclass(frozen=True)
class InfeasibilityCertificate:
    """Where the search gave up. Weeks and teams are 1-based."""
    week: int
    weeks_completed: int
    nodes: int
    budget_exhausted: bool = False
    unmeetable_pair: Optional[Tuple[int, int]] = None


@dataclass(frozen=True)
class ScheduleOutcome:
    status: ScheduleStatus
    schedule: Optional[ScheduleMatrix] = None
    certificate: Optional[InfeasibilityCertificate] = None

    @property
    def feasible(self):
        return self.status == ScheduleStatus.FEASIBLE


_MALFORMED = (ViolationKind.BAD_SHAPE, ViolationKind.RUN_LENGTH, ViolationKind.MIRROR_COMPLEMENT)


class _BudgetExhausted(Exception):
    pass


class _MatchingSearch:
    """Backtracking over per-week perfect matchings, most constrained team first."""

    def __init__(self, bits, half, node_budget):
        self.n = bits.shape[0]
        self.half = half
        self.node_budget = node_budget
        venue = bits[:, :half].tolist()
        self.differs = [
            [sum(1 << w for w in range(half) if venue[i][w] != venue[j][w]) for j in range(self.n)]
            for i in range(self.n)
        ]
        self.venue = venue
        self.played = [[False] * self.n for _ in range(self.n)]
        self.opponents = [[-1] * half for _ in range(self.n)]
        self.nodes = 0
        self.deepest_week = 0
        self.weeks_completed = 0

    def unmeetable_pair(self):
        for i in range(self.n):
            for j in range(i + 1, self.n):
                if not self.differs[i][j]:
                    return i, j
        return None

    def run(self):
        return self._fill(0, [-1] * self.n)

    def _fill(self, week, partner):
        self.nodes += 1
        if self.node_budget is not None and self.nodes > self.node_budget:
            raise _BudgetExhausted()
        if week == self.half:
            return True
        self.deepest_week = max(self.deepest_week, week)

        team, candidates = self._most_constrained(week, partner)
        if team is None:
            self.weeks_completed = max(self.weeks_completed, week + 1)
            if not self._pairs_reachable(week + 1):
                return False
            return self._fill(week + 1, [-1] * self.n)

        for other in candidates:
            self._assign(team, other, week, partner, True)
            if self._fill(week, partner):
                return True
            self._assign(team, other, week, partner, False)
        return False

    def _most_constrained(self, week, partner):
        best, best_candidates = None, None
        for i in range(self.n):
            if partner[i] >= 0:
                continue
            candidates = [
                j for j in range(self.n)
                if j != i and partner[j] < 0 and not self.played[i][j]
                and self.venue[i][week] != self.venue[j][week]
            ]
            if not candidates:
                return i, []
            if best is None or len(candidates) < len(best_candidates):
                best, best_candidates = i, candidates
        return best, best_candidates

    def _assign(self, i, j, week, partner, on):
        partner[i], partner[j] = (j, i) if on else (-1, -1)
        self.played[i][j] = self.played[j][i] = on
        self.opponents[i][week], self.opponents[j][week] = (j, i) if on else (-1, -1)

    def _pairs_reachable(self, next_week):
        # every pair still to meet needs a later week with opposite venues
        remaining = ((1 << self.half) - 1) & ~((1 << next_week) - 1)
        for i in range(self.n):
            for j in range(i + 1, self.n):
                if not self.played[i][j] and not self.differs[i][j] & remaining:
                    return False
        return True

    def schedule(self):
        first_half = np.array(self.opponents, dtype=np.int16)
        return ScheduleMatrix(np.hstack([first_half, first_half]))


def _checked_matrix(travel):
    try:
        travel = travel if isinstance(travel, TravelMatrix) else TravelMatrix(travel)
        size = InstanceSize(travel.n)
    except (ShapeError, InvalidInstanceError) as e:
        violation = getattr(e, 'violation', None) or Violation(ViolationKind.BAD_SHAPE, detail=str(e))
        raise InvalidTravelMatrixError([violation])
    # duplicate rows and column imbalance reach the search and come back Infeasible
    malformed = [v for v in validate_travel(travel, size) if v.kind in _MALFORMED]
    if malformed:
        raise InvalidTravelMatrixError(malformed)
    return travel, size


def build_schedule(travel, node_budget=DEFAULT_NODE_BUDGET):
    """
    Find an opponent assignment consistent with `travel`.

    Returns an Infeasible outcome (not an error) when no assignment exists or
    the node budget runs out; the certificate tells the two apart. Rows that
    are malformed, not mirrored, run longer than three games or lack a
    complement partner raise InvalidTravelMatrixError.
    """
    travel, size = _checked_matrix(travel)
    search = _MatchingSearch(travel.bits, size.half, node_budget)

    pair = search.unmeetable_pair()
    if pair is not None:
        certificate = InfeasibilityCertificate(week=1, weeks_completed=0, nodes=0,
                                               unmeetable_pair=(pair[0] + 1, pair[1] + 1))
        return ScheduleOutcome(ScheduleStatus.INFEASIBLE, certificate=certificate)

    try:
        found = search.run()
    except _BudgetExhausted:
        logger.warning(f"Schedule search for n={size.n} abandoned after {node_budget} nodes")
        certificate = InfeasibilityCertificate(week=search.deepest_week + 1,
                                               weeks_completed=search.weeks_completed,
                                               nodes=search.nodes, budget_exhausted=True)
        return ScheduleOutcome(ScheduleStatus.INFEASIBLE, certificate=certificate)

    if not found:
        certificate = InfeasibilityCertificate(week=search.deepest_week + 1,
                                               weeks_completed=search.weeks_completed,
                                               nodes=search.nodes)
        return ScheduleOutcome(ScheduleStatus.INFEASIBLE, certificate=certificate)
    return ScheduleOutcome(ScheduleStatus.FEASIBLE, schedule=search.schedule())


class Scheduler:
    """
    Schedule builder with an outcome cache keyed by the travel matrix bits.

    The cache is shared between threads under a lock and only ever stores
    proven outcomes; abandoned searches are not cached. With `max_entries`
    set, the least recently used outcome is evicted first.
    """

    def __init__(self, node_budget=DEFAULT_NODE_BUDGET, max_entries=None):
        self.node_budget = node_budget
        self.max_entries = max_entries
        self._outcomes = OrderedDict()
        self._lock = threading.Lock()

    def build_schedule(self, travel):
        travel = travel if isinstance(travel, TravelMatrix) else TravelMatrix(travel)
        key = travel.key()
        with self._lock:
            cached = self._outcomes.get(key)
            if cached is not None:
                self._outcomes.move_to_end(key)
        if cached is not None:
            return cached
        outcome = build_schedule(travel, self.node_budget)
        if outcome.certificate is None or not outcome.certificate.budget_exhausted:
            with self._lock:
                self._outcomes[key] = outcome
                if self.max_entries is not None and len(self._outcomes) > self.max_entries:
                    self._outcomes.popitem(last=False)
        return outcome

    def is_schedulable(self, travel):
        return self.build_schedule(travel).feasible

    def cache_size(self):
        with self._lock:
            return len(self._outcomes)

    def clear_cache(self):
        with self._lock:
            self._outcomes.clear()


_default_scheduler = Scheduler(max_entries=DEFAULT_CACHE_LIMIT)


def is_schedulable(travel):
    """Memoised feasibility verdict using the shared default scheduler."""
    return _default_scheduler.is_schedulable(travel)
