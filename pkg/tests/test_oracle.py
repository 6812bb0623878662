import unittest

from mttp.errors import InvalidInstanceError
from mttp.models.tournament import count_trips_total, fairness_spread, validate_tournament
from mttp.solver.oracle import (
    enumerate_travel_matrices, exhaustive_min_trips, exhaustive_schedulability, perfect_matchings,
)
from tests.fixtures import FOUR_TEAM_TRAVEL


class OracleTestCase(unittest.TestCase):
    """Test case for the brute-force ground truth."""

    def test_four_team_minimum(self):
        result = exhaustive_min_trips(4)
        self.assertEqual(result.min_trips, 17)
        self.assertEqual(len(result.witnesses), 2)
        for witness in result.witnesses:
            self.assertEqual(validate_tournament(witness), [])
            self.assertEqual(count_trips_total(witness.travel), 17)
            self.assertLessEqual(fairness_spread(witness.travel), 2)

    def test_six_team_minimum(self):
        result = exhaustive_min_trips(6)
        self.assertEqual(result.min_trips, 48)
        self.assertEqual(validate_tournament(result.witness), [])

    def test_unsupported_sizes(self):
        with self.assertRaises(InvalidInstanceError):
            exhaustive_min_trips(8)
        with self.assertRaises(InvalidInstanceError):
            exhaustive_schedulability(FOUR_TEAM_TRAVEL, n=6)
        with self.assertRaises(InvalidInstanceError):
            next(enumerate_travel_matrices(6))

    def test_perfect_matchings(self):
        self.assertEqual(len(list(perfect_matchings(range(4)))), 3)
        self.assertEqual(len(list(perfect_matchings(range(6)))), 15)

    def test_exhaustive_schedulability(self):
        self.assertTrue(exhaustive_schedulability(FOUR_TEAM_TRAVEL))
        duplicated = [[0, 0, 0, 1, 1, 1], [0, 0, 0, 1, 1, 1], [1, 1, 1, 0, 0, 0], [1, 1, 1, 0, 0, 0]]
        self.assertFalse(exhaustive_schedulability(duplicated))

    def test_enumerates_every_row_order(self):
        matrices = list(enumerate_travel_matrices(4))
        self.assertEqual(len(matrices), 6 * 24)
        self.assertEqual(len(set(matrices)), len(matrices))


if __name__ == '__main__':
    unittest.main()
