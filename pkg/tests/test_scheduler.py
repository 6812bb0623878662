import unittest

from mttp.errors import InvalidTravelMatrixError
from mttp.models.tournament import InstanceSize, Tournament, TravelMatrix, ViolationKind, validate_tournament
from mttp.solver.oracle import enumerate_travel_matrices, exhaustive_schedulability
from mttp.solver.patterns import build_from_seeds, build_individual, make_rng
from mttp.solver.scheduler import ScheduleStatus, Scheduler, build_schedule, is_schedulable
from tests.fixtures import FOUR_TEAM_TRAVEL


class BuildScheduleTestCase(unittest.TestCase):
    """Test case for opponent assignment."""

    def test_four_team_travel_is_feasible(self):
        outcome = build_schedule(FOUR_TEAM_TRAVEL)
        self.assertEqual(outcome.status, ScheduleStatus.FEASIBLE)
        tournament = Tournament(InstanceSize(4), TravelMatrix(FOUR_TEAM_TRAVEL), outcome.schedule)
        self.assertEqual(validate_tournament(tournament), [])

    def test_second_half_repeats_first_half(self):
        cells = build_schedule(FOUR_TEAM_TRAVEL).schedule.cells
        self.assertEqual(cells[:, :3].tolist(), cells[:, 3:].tolist())

    def test_identical_rows_are_infeasible(self):
        travel = [[0, 0, 0, 1, 1, 1], [0, 0, 0, 1, 1, 1], [1, 1, 1, 0, 0, 0], [1, 1, 1, 0, 0, 0]]
        outcome = build_schedule(travel)
        self.assertEqual(outcome.status, ScheduleStatus.INFEASIBLE)
        self.assertIsNone(outcome.schedule)
        self.assertEqual(outcome.certificate.unmeetable_pair, (1, 2))
        self.assertFalse(outcome.certificate.budget_exhausted)

    def test_unmirrored_rows_raise(self):
        travel = [[0, 0, 0, 0, 1, 1], [1, 0, 0, 0, 1, 1], [0, 1, 1, 1, 0, 0], [1, 1, 1, 0, 0, 0]]
        with self.assertRaises(InvalidTravelMatrixError) as caught:
            build_schedule(travel)
        self.assertTrue(caught.exception.violations)

    def test_long_runs_raise(self):
        travel = build_from_seeds([
            [0, 0, 1, 1, 1, 1, 1, 0, 0, 0],
            [1, 0, 1, 0, 1, 0, 1, 0, 1, 0],
            [1, 0, 1, 1, 0, 0, 1, 0, 0, 1],
        ])
        with self.assertRaises(InvalidTravelMatrixError) as caught:
            build_schedule(travel)
        located = [(v.kind, v.team, v.week) for v in caught.exception.violations]
        self.assertEqual(located, [(ViolationKind.RUN_LENGTH, 1, 3), (ViolationKind.RUN_LENGTH, 4, 3)])

    def test_rows_without_complement_partner_raise(self):
        travel = [
            [1, 0, 1, 1, 0, 0, 1, 0, 0, 1],
            [1, 1, 0, 0, 1, 0, 0, 1, 1, 0],
            [0, 1, 0, 1, 0, 1, 0, 1, 0, 1],
            [0, 0, 1, 0, 1, 1, 1, 0, 1, 0],
            [0, 1, 1, 0, 0, 1, 0, 0, 1, 1],
            [1, 0, 0, 1, 1, 0, 1, 1, 0, 0],
        ]
        with self.assertRaises(InvalidTravelMatrixError) as caught:
            build_schedule(travel)
        located = [(v.kind, v.team, v.week) for v in caught.exception.violations]
        self.assertEqual(located, [(ViolationKind.MIRROR_COMPLEMENT, team, None) for team in (1, 2, 3, 4)])

    def test_wrong_shape_raises(self):
        with self.assertRaises(InvalidTravelMatrixError):
            build_schedule([[0, 1, 0], [1, 0, 1]])

    def test_budget_exhaustion_is_reported(self):
        outcome = build_schedule(FOUR_TEAM_TRAVEL, node_budget=1)
        self.assertEqual(outcome.status, ScheduleStatus.INFEASIBLE)
        self.assertTrue(outcome.certificate.budget_exhausted)

    def test_found_schedules_are_valid(self):
        rng = make_rng(5)
        found = 0
        for n, draws in ((4, 30), (6, 30), (8, 5)):
            for _ in range(draws):
                travel = build_individual(n, rng)
                outcome = build_schedule(travel)
                if outcome.feasible:
                    found += 1
                    tournament = Tournament(InstanceSize(n), travel, outcome.schedule)
                    self.assertEqual(validate_tournament(tournament), [], f"n={n}")
                else:
                    self.assertIsNotNone(outcome.certificate)
        self.assertGreater(found, 0)

    def test_deterministic(self):
        travel = build_individual(8, make_rng(3))
        self.assertEqual(build_schedule(travel), build_schedule(travel))

    def test_agrees_with_exhaustive_search_for_four_teams(self):
        scheduler = Scheduler(node_budget=None)
        disagreements = [
            travel.tolist() for travel in enumerate_travel_matrices(4)
            if scheduler.is_schedulable(travel) != exhaustive_schedulability(travel)
        ]
        self.assertEqual(disagreements, [])


class SchedulerCacheTestCase(unittest.TestCase):
    """Test case for the memoising scheduler."""

    def test_outcomes_are_cached(self):
        scheduler = Scheduler()
        first = scheduler.build_schedule(FOUR_TEAM_TRAVEL)
        second = scheduler.build_schedule(TravelMatrix(FOUR_TEAM_TRAVEL))
        self.assertIs(first, second)
        self.assertEqual(scheduler.cache_size(), 1)
        scheduler.clear_cache()
        self.assertEqual(scheduler.cache_size(), 0)

    def test_cache_evicts_least_recently_used(self):
        duplicated = [[0, 0, 0, 1, 1, 1], [0, 0, 0, 1, 1, 1], [1, 1, 1, 0, 0, 0], [1, 1, 1, 0, 0, 0]]
        scheduler = Scheduler(max_entries=1)
        first = scheduler.build_schedule(FOUR_TEAM_TRAVEL)
        self.assertFalse(scheduler.is_schedulable(duplicated))
        self.assertEqual(scheduler.cache_size(), 1)
        self.assertIsNot(scheduler.build_schedule(FOUR_TEAM_TRAVEL), first)

    def test_exhausted_searches_are_not_cached(self):
        scheduler = Scheduler(node_budget=1)
        self.assertFalse(scheduler.is_schedulable(FOUR_TEAM_TRAVEL))
        self.assertEqual(scheduler.cache_size(), 0)

    def test_module_level_helper(self):
        self.assertTrue(is_schedulable(FOUR_TEAM_TRAVEL))


if __name__ == '__main__':
    unittest.main()
