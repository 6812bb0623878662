import unittest
from itertools import product

import numpy as np

from mttp.errors import InvalidInstanceError, ShapeError
from mttp.models.tournament import (
    InstanceSize, ScheduleMatrix, Tournament, TravelMatrix, ViolationKind, away_runs, count_trips_team,
    count_trips_total, fairness_spread, trips_per_team, validate_tournament, validate_travel,
)
from mttp.solver.patterns import complement_classes, make_rng, swap_complement
from tests.fixtures import (
    FOUR_TEAM_SCHEDULE, FOUR_TEAM_TRAVEL, FOUR_TEAM_TRIPS, SIX_TEAM_TRAVEL, venue_walk_trips,
)


def _kinds(violations):
    return [v.kind for v in violations]


class InstanceSizeTestCase(unittest.TestCase):
    """Test case for instance sizes."""

    def test_derived_dimensions(self):
        size = InstanceSize(6)
        self.assertEqual((size.weeks, size.half, size.pairs), (10, 5, 3))

    def test_rejects_odd_and_small_counts(self):
        for n in (0, 2, 3, 5, 7, -4):
            with self.assertRaises(InvalidInstanceError):
                InstanceSize(n)

    def test_rejects_non_integers(self):
        for n in (4.0, '4', True, None):
            with self.assertRaises(InvalidInstanceError):
                InstanceSize(n)


class TripCountTestCase(unittest.TestCase):
    """Test case for the trip-counting objective."""

    def test_four_team_rows(self):
        trips = [count_trips_team(row) for row in FOUR_TEAM_TRAVEL]
        self.assertEqual(trips, FOUR_TEAM_TRIPS)
        self.assertEqual(count_trips_total(FOUR_TEAM_TRAVEL), 17)

    def test_trips_are_aways_plus_runs(self):
        self.assertEqual(count_trips_team([1, 1, 1, 1, 1, 1]), 7)
        self.assertEqual(count_trips_team([1, 0, 1, 0, 1, 0]), 6)
        self.assertEqual(count_trips_team([0, 0, 0, 0, 0, 0]), 0)
        self.assertEqual(away_runs([1, 0, 0, 0, 1, 1]), 2)

    def test_length_mismatch_is_bad_shape(self):
        with self.assertRaises(ShapeError) as caught:
            count_trips_team([0, 1, 0], size=4)
        self.assertEqual(caught.exception.violation.kind, ViolationKind.BAD_SHAPE)

    def test_non_binary_flags_are_bad_shape(self):
        with self.assertRaises(ShapeError):
            count_trips_team([0, 2, 0, 1, 1, 1])

    def test_total_rejects_wrong_matrix_shape(self):
        with self.assertRaises(ShapeError):
            count_trips_total([[0, 1, 0], [1, 0, 1]])

    def test_agrees_with_venue_walk(self):
        rng = make_rng(2024)
        for n in range(4, 21, 2):
            weeks = 2 * n - 2
            samples = rng.integers(0, 2, size=(10_000, weeks))
            mismatches = [
                seq for seq in samples.tolist()
                if count_trips_team(seq, n) != venue_walk_trips(seq)
            ]
            self.assertEqual(mismatches, [], f"n={n}")

    def test_total_matches_per_team_sum(self):
        self.assertEqual(trips_per_team(SIX_TEAM_TRAVEL), [count_trips_team(row) for row in SIX_TEAM_TRAVEL])
        self.assertEqual(count_trips_total(SIX_TEAM_TRAVEL), sum(trips_per_team(SIX_TEAM_TRAVEL)))


class FairnessTestCase(unittest.TestCase):
    """Test case for the fairness spread."""

    def test_four_team_spread(self):
        self.assertEqual(fairness_spread(TravelMatrix(FOUR_TEAM_TRAVEL)), 1)

    def test_complement_rows_differ_by_at_most_one_trip(self):
        for n in range(4, 13, 2):
            for home_first, away_first in complement_classes(n):
                gap = abs(count_trips_team(home_first) - count_trips_team(away_first))
                self.assertLessEqual(gap, 1, f"n={n} row={home_first.tolist()}")

    def test_complement_gap_over_all_short_sequences(self):
        worst = {}
        for length in range(1, 15):
            worst[length] = max(
                abs(count_trips_team(seq) - count_trips_team(swap_complement(seq)))
                for seq in product((0, 1), repeat=length)
            )
        self.assertEqual(worst, {length: length + 1 for length in range(1, 15)})

    def test_all_away_sequence_is_worst_case_gap(self):
        seq = np.ones(6, dtype=np.int8)
        self.assertEqual(count_trips_team(seq) - count_trips_team(swap_complement(seq)), 7)


class ValidateTravelTestCase(unittest.TestCase):
    """Test case for travel matrix validation."""

    def test_known_matrices_are_valid(self):
        self.assertEqual(validate_travel(FOUR_TEAM_TRAVEL, 4), [])
        self.assertEqual(validate_travel(TravelMatrix(SIX_TEAM_TRAVEL), 6), [])

    def test_long_runs_are_reported(self):
        rows = [list(row) for row in SIX_TEAM_TRAVEL]
        rows[0] = [0, 0, 0, 0, 1, 1, 1, 1, 1, 0]
        runs = [(v.team, v.week) for v in validate_travel(rows, 6) if v.kind == ViolationKind.RUN_LENGTH]
        self.assertEqual(runs, [(1, 1), (1, 5)])

    def test_broken_mirror_is_reported(self):
        rows = [list(row) for row in FOUR_TEAM_TRAVEL]
        rows[0] = [0, 0, 0, 0, 1, 1]
        mirror = [(v.team, v.week) for v in validate_travel(rows, 4) if v.kind == ViolationKind.MIRROR_COMPLEMENT]
        self.assertIn((1, 4), mirror)

    def test_column_balance(self):
        rows = [list(row) for row in FOUR_TEAM_TRAVEL]
        rows[3] = [0, 1, 1, 1, 0, 0]
        kinds = _kinds(validate_travel(rows, 4))
        self.assertIn(ViolationKind.COLUMN_BALANCE, kinds)
        self.assertIn(ViolationKind.DUPLICATE_ROW, kinds)

    def test_duplicate_rows(self):
        rows = [[0, 0, 0, 1, 1, 1], [0, 0, 0, 1, 1, 1], [1, 1, 1, 0, 0, 0], [1, 1, 1, 0, 0, 0]]
        violations = validate_travel(rows, 4)
        self.assertEqual(_kinds(violations), [ViolationKind.DUPLICATE_ROW] * 2)
        self.assertEqual([v.team for v in violations], [2, 4])
        self.assertIn('team 1', violations[0].detail)

    def test_wrong_row_count_is_bad_shape(self):
        violations = validate_travel(FOUR_TEAM_TRAVEL[:3], 4)
        self.assertIn(ViolationKind.BAD_SHAPE, _kinds(violations))

    def test_wrong_row_length_is_bad_shape(self):
        rows = [row[:5] for row in FOUR_TEAM_TRAVEL]
        violations = validate_travel(rows, 4)
        self.assertEqual(set(_kinds(violations)), {ViolationKind.BAD_SHAPE})
        self.assertEqual(len(violations), 4)


class ValidateTournamentTestCase(unittest.TestCase):
    """Test case for full tournament validation."""

    def setUp(self):
        self.tournament = Tournament.from_team_ids(FOUR_TEAM_TRAVEL, FOUR_TEAM_SCHEDULE)

    def test_four_team_tournament_is_valid(self):
        self.assertEqual(validate_tournament(self.tournament), [])
        self.assertEqual(self.tournament.schedule.to_team_ids(), FOUR_TEAM_SCHEDULE)

    def test_missing_schedule(self):
        tournament = Tournament(InstanceSize(4), TravelMatrix(FOUR_TEAM_TRAVEL))
        self.assertEqual(_kinds(validate_tournament(tournament)), [ViolationKind.BAD_SHAPE])

    def test_self_play(self):
        schedule = [list(row) for row in FOUR_TEAM_SCHEDULE]
        schedule[0][0] = 1
        violations = validate_tournament(Tournament.from_team_ids(FOUR_TEAM_TRAVEL, schedule))
        self.assertIn((ViolationKind.SELF_PLAY, 1, 1), [(v.kind, v.team, v.week) for v in violations])

    def test_symmetry_broken(self):
        schedule = [list(row) for row in FOUR_TEAM_SCHEDULE]
        schedule[0][0] = 3
        violations = validate_tournament(Tournament.from_team_ids(FOUR_TEAM_TRAVEL, schedule))
        located = [(v.kind, v.team, v.week) for v in violations]
        self.assertIn((ViolationKind.SYMMETRY_BROKEN, 1, 1), located)
        self.assertIn(ViolationKind.NOT_ROUND_ROBIN, _kinds(violations))
        self.assertIn(ViolationKind.NOT_MIRRORED, _kinds(violations))

    def test_venue_inconsistent(self):
        schedule = [
            [3, 2, 4, 3, 2, 4],
            [4, 1, 3, 4, 1, 3],
            [1, 4, 2, 1, 4, 2],
            [2, 3, 1, 2, 3, 1],
        ]
        violations = validate_tournament(Tournament.from_team_ids(FOUR_TEAM_TRAVEL, schedule))
        self.assertEqual(set(_kinds(violations)), {ViolationKind.VENUE_INCONSISTENT})
        self.assertEqual(len(violations), 8)
        self.assertEqual((violations[0].team, violations[0].week), (1, 1))
        self.assertIn('both home', violations[0].detail)

    def test_out_of_range_opponent_is_bad_shape(self):
        schedule = [list(row) for row in FOUR_TEAM_SCHEDULE]
        schedule[1][2] = 9
        violations = validate_tournament(Tournament.from_team_ids(FOUR_TEAM_TRAVEL, schedule))
        self.assertEqual(_kinds(violations), [ViolationKind.BAD_SHAPE])


class MatrixTypesTestCase(unittest.TestCase):
    """Test case for the immutable matrix wrappers."""

    def test_travel_matrix_is_read_only(self):
        travel = TravelMatrix(FOUR_TEAM_TRAVEL)
        with self.assertRaises(ValueError):
            travel.bits[0, 0] = 1
        with self.assertRaises(AttributeError):
            travel.partners = None

    def test_partner_lookup_without_map(self):
        travel = TravelMatrix(FOUR_TEAM_TRAVEL)
        self.assertEqual([travel.partner_of(team) for team in range(4)], [3, 2, 1, 0])

    def test_equality_and_hash(self):
        self.assertEqual(TravelMatrix(FOUR_TEAM_TRAVEL), TravelMatrix(np.array(FOUR_TEAM_TRAVEL)))
        self.assertEqual(len({TravelMatrix(FOUR_TEAM_TRAVEL), TravelMatrix(FOUR_TEAM_TRAVEL)}), 1)
        self.assertEqual(ScheduleMatrix.from_team_ids(FOUR_TEAM_SCHEDULE),
                         ScheduleMatrix(np.array(FOUR_TEAM_SCHEDULE) - 1))

    def test_ragged_rows_are_bad_shape(self):
        with self.assertRaises(ShapeError):
            TravelMatrix([[0, 1], [1]])


if __name__ == '__main__':
    unittest.main()
