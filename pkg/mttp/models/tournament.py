"""
Domain types, the trip-counting objective and validators for mirrored
double round robin tournaments.

A tournament is held as two n x (2n-2) grids: the travel matrix (0 = home,
1 = away per team and week) and the schedule matrix (opponent per team and
week). Teams and weeks are 0-based in memory and 1-based in every message,
file and report.
"""

from collections import Counter
from dataclasses import dataclass
from enum import Enum
from itertools import groupby
from typing import Optional

import numpy as np

from mttp.errors import InvalidInstanceError, ShapeError

HOME = 0
AWAY = 1
MAX_RUN = 3


@dataclass(frozen=True)
class InstanceSize:
    """Number of teams of an instance; even and at least 4."""
    n: int

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, (int, np.integer)):
            raise InvalidInstanceError(f"Team count must be an integer, got {self.n!r}")
        if self.n < 4 or self.n % 2:
            raise InvalidInstanceError(f"Team count must be an even integer >= 4, got {self.n}")
        object.__setattr__(self, 'n', int(self.n))

    @property
    def weeks(self):
        return 2 * self.n - 2

    @property
    def half(self):
        return self.n - 1

    @property
    def pairs(self):
        return self.n // 2


class ViolationKind(str, Enum):
    RUN_LENGTH = 'RunLength'
    MIRROR_COMPLEMENT = 'MirrorComplement'
    COLUMN_BALANCE = 'ColumnBalance'
    DUPLICATE_ROW = 'DuplicateRow'
    SELF_PLAY = 'SelfPlay'
    SYMMETRY_BROKEN = 'SymmetryBroken'
    NOT_ROUND_ROBIN = 'NotRoundRobin'
    NOT_MIRRORED = 'NotMirrored'
    VENUE_INCONSISTENT = 'VenueInconsistent'
    BAD_SHAPE = 'BadShape'


@dataclass(frozen=True)
class Violation:
    """One breached invariant. `team` and `week` are 1-based when present."""
    kind: ViolationKind
    team: Optional[int] = None
    week: Optional[int] = None
    detail: str = ''

    def __str__(self):
        where = []
        if self.team is not None:
            where.append(f"team {self.team}")
        if self.week is not None:
            where.append(f"week {self.week}")
        location = f" ({', '.join(where)})" if where else ''
        return f"{self.kind.value}{location}: {self.detail}"


def _as_size(size):
    return size if isinstance(size, InstanceSize) else InstanceSize(size)


def _as_bits(values, ndim):
    """Convert a 0/1 grid to a read-only int8 array, raising ShapeError otherwise."""
    try:
        bits = np.array(values, dtype=np.int8)
    except (TypeError, ValueError, OverflowError) as e:
        raise ShapeError(Violation(ViolationKind.BAD_SHAPE, detail=f"Not a rectangular 0/1 grid: {e}"))
    if bits.ndim != ndim:
        raise ShapeError(Violation(ViolationKind.BAD_SHAPE, detail=f"Expected {ndim} dimension(s), got {bits.ndim}"))
    if bits.size and not np.isin(bits, (HOME, AWAY)).all():
        raise ShapeError(Violation(ViolationKind.BAD_SHAPE, detail="Venue flags must be 0 (home) or 1 (away)"))
    bits.flags.writeable = False
    return bits


class TravelMatrix:
    """
    Home/away flags for every team and week.

    `partners` optionally records, per row, the index of its complement row.
    Rows built by the pattern generator pair row k with row n/2 + k.
    """

    __slots__ = ('bits', 'partners')

    def __init__(self, bits, partners=None):
        bits = bits.bits if isinstance(bits, TravelMatrix) else bits
        object.__setattr__(self, 'bits', _as_bits(bits, 2))
        if partners is not None:
            partners = tuple(int(p) for p in partners)
            if len(partners) != self.bits.shape[0]:
                raise ShapeError(Violation(ViolationKind.BAD_SHAPE, detail="Partner map length differs from row count"))
        object.__setattr__(self, 'partners', partners)

    def __setattr__(self, name, value):
        raise AttributeError("TravelMatrix is immutable")

    def __reduce__(self):
        return TravelMatrix, (self.bits, self.partners)

    @property
    def n(self):
        return self.bits.shape[0]

    @property
    def weeks(self):
        return self.bits.shape[1]

    @property
    def size(self):
        return InstanceSize(self.n)

    def row(self, team):
        return self.bits[team]

    def key(self):
        return self.bits.shape, self.bits.tobytes()

    def partner_of(self, team):
        """Index of the row that complements `team`, or None."""
        if self.partners is not None:
            return self.partners[team]
        complement = AWAY - self.bits[team]
        for other in range(self.n):
            if other != team and np.array_equal(self.bits[other], complement):
                return other
        return None

    def tolist(self):
        return self.bits.tolist()

    def __eq__(self, other):
        return isinstance(other, TravelMatrix) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"TravelMatrix(n={self.n}, rows={self.tolist()})"


class ScheduleMatrix:
    """Opponent of every team in every week, 0-based."""

    __slots__ = ('cells',)

    def __init__(self, cells):
        cells = cells.cells if isinstance(cells, ScheduleMatrix) else cells
        try:
            array = np.array(cells, dtype=np.int16)
        except (TypeError, ValueError, OverflowError) as e:
            raise ShapeError(Violation(ViolationKind.BAD_SHAPE, detail=f"Not a rectangular opponent grid: {e}"))
        if array.ndim != 2:
            raise ShapeError(Violation(ViolationKind.BAD_SHAPE, detail="Schedule must be a 2-dimensional grid"))
        array.flags.writeable = False
        object.__setattr__(self, 'cells', array)

    def __setattr__(self, name, value):
        raise AttributeError("ScheduleMatrix is immutable")

    def __reduce__(self):
        return ScheduleMatrix, (self.cells,)

    @classmethod
    def from_team_ids(cls, rows):
        """Build from 1-based team ids, the form used in files and reports."""
        try:
            cells = np.array(rows, dtype=np.int16) - 1
        except (TypeError, ValueError, OverflowError) as e:
            raise ShapeError(Violation(ViolationKind.BAD_SHAPE, detail=f"Not a rectangular opponent grid: {e}"))
        return cls(cells)

    def to_team_ids(self):
        return (self.cells + 1).tolist()

    def tolist(self):
        return self.cells.tolist()

    def __eq__(self, other):
        if not isinstance(other, ScheduleMatrix):
            return False
        return self.cells.shape == other.cells.shape and np.array_equal(self.cells, other.cells)

    def __hash__(self):
        return hash((self.cells.shape, self.cells.tobytes()))

    def __repr__(self):
        return f"ScheduleMatrix(rows={self.to_team_ids()})"


@dataclass(frozen=True, eq=False)
class Tournament:
    """A travel matrix together with (optionally) the schedule that realises it."""
    size: InstanceSize
    travel: TravelMatrix
    schedule: Optional[ScheduleMatrix] = None

    @classmethod
    def from_team_ids(cls, travel_rows, schedule_rows=None):
        travel = TravelMatrix(travel_rows)
        schedule = ScheduleMatrix.from_team_ids(schedule_rows) if schedule_rows is not None else None
        return cls(InstanceSize(len(travel_rows)), travel, schedule)


def away_runs(seq):
    """Number of maximal runs of away games."""
    bits = np.asarray(seq, dtype=np.int8)
    return int(np.count_nonzero(np.diff(bits, prepend=HOME, axis=-1) == 1))


def count_trips_team(seq, size=None):
    """
    Trips of one team over the season walk home, v(1), ..., v(2n-2), home.

    Every away game is entered by exactly one trip and every maximal away run
    ends with one trip back home, so trips = away games + away runs.
    """
    bits = _as_bits(seq, 1)
    if size is not None and bits.shape[0] != _as_size(size).weeks:
        raise ShapeError(Violation(
            ViolationKind.BAD_SHAPE,
            detail=f"Sequence has {bits.shape[0]} weeks, expected {_as_size(size).weeks}"))
    return int(bits.sum()) + away_runs(bits)


def _travel_bits(travel, size=None):
    bits = travel.bits if isinstance(travel, TravelMatrix) else _as_bits(travel, 2)
    rows, weeks = bits.shape
    expected = (size.n, size.weeks) if size is not None else (rows, 2 * rows - 2)
    if (rows, weeks) != expected:
        raise ShapeError(Violation(
            ViolationKind.BAD_SHAPE,
            detail=f"Travel matrix is {rows}x{weeks}, expected {expected[0]}x{expected[1]}"))
    return bits


def trips_per_team(travel, size=None):
    bits = _travel_bits(travel, _as_size(size) if size is not None else None)
    runs = np.count_nonzero(np.diff(bits, prepend=HOME, axis=1) == 1, axis=1)
    return (bits.sum(axis=1) + runs).astype(int).tolist()


def count_trips_total(travel, size=None):
    """Total trips of all teams; the quantity the solver minimises."""
    return int(sum(trips_per_team(travel, size)))


def fairness_spread(travel):
    """Largest difference in trips between any two teams."""
    trips = trips_per_team(travel)
    return max(trips) - min(trips)


def _grid_rows(grid):
    if isinstance(grid, TravelMatrix):
        return grid.bits.tolist()
    if isinstance(grid, ScheduleMatrix):
        return grid.cells.tolist()
    if isinstance(grid, np.ndarray):
        return grid.tolist()
    return [list(row) if isinstance(row, (list, tuple, np.ndarray)) else row for row in grid]


def _is_int(value):
    return isinstance(value, (int, np.integer)) and not isinstance(value, bool)


def _travel_shape_violations(rows, size):
    violations = []
    if len(rows) != size.n:
        violations.append(Violation(ViolationKind.BAD_SHAPE, detail=f"Expected {size.n} team rows, got {len(rows)}"))
    well_formed = set()
    for team, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != size.weeks:
            length = len(row) if isinstance(row, list) else 'no'
            violations.append(Violation(ViolationKind.BAD_SHAPE, team + 1,
                                        detail=f"Expected {size.weeks} weeks, got {length}"))
        elif not all(_is_int(v) and v in (HOME, AWAY) for v in row):
            violations.append(Violation(ViolationKind.BAD_SHAPE, team + 1,
                                        detail="Venue flags must be 0 (home) or 1 (away)"))
        else:
            well_formed.add(team)
    return violations, well_formed


def _run_length_violations(row, team):
    violations = []
    start = 0
    for value, group in groupby(row):
        length = len(list(group))
        if length > MAX_RUN:
            venue = 'away' if value == AWAY else 'home'
            violations.append(Violation(ViolationKind.RUN_LENGTH, team + 1, start + 1,
                                        f"{length} consecutive {venue} games"))
        start += length
    return violations


def _mirror_violations(row, team, size):
    return [
        Violation(ViolationKind.MIRROR_COMPLEMENT, team + 1, week + size.half + 1,
                  f"Week {week + size.half + 1} must be the opposite venue of week {week + 1}")
        for week in range(size.half)
        if row[week + size.half] != AWAY - row[week]
    ]


def validate_travel(travel, size):
    """
    Check every travel matrix invariant and return all breaches.

    Accepts a TravelMatrix or any nested sequence; an empty list means the
    matrix is valid for the given instance size.
    """
    size = _as_size(size)
    rows = _grid_rows(travel)
    violations, well_formed = _travel_shape_violations(rows, size)

    for team in sorted(well_formed):
        violations.extend(_run_length_violations(rows[team], team))
        violations.extend(_mirror_violations(rows[team], team, size))

    if violations and any(v.kind == ViolationKind.BAD_SHAPE for v in violations):
        return violations

    bits = np.array(rows, dtype=np.int8)
    for week, total in enumerate(bits.sum(axis=0)):
        if total != size.pairs:
            violations.append(Violation(ViolationKind.COLUMN_BALANCE, week=week + 1,
                                        detail=f"{int(total)} away games, expected {size.pairs}"))

    first_seen = {}
    for team, row in enumerate(map(tuple, rows)):
        if row in first_seen:
            violations.append(Violation(ViolationKind.DUPLICATE_ROW, team + 1,
                                        detail=f"Same travel sequence as team {first_seen[row] + 1}"))
        else:
            first_seen[row] = team

    counts = Counter(map(tuple, rows))
    for team, row in enumerate(map(tuple, rows)):
        complement = tuple(AWAY - v for v in row)
        if counts[row] != counts[complement]:
            violations.append(Violation(ViolationKind.MIRROR_COMPLEMENT, team + 1,
                                        detail="No complement partner row"))
    return violations


def _schedule_shape_violations(rows, size):
    if len(rows) != size.n:
        return [Violation(ViolationKind.BAD_SHAPE, detail=f"Schedule has {len(rows)} rows, expected {size.n}")]
    violations = []
    for team, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != size.weeks:
            violations.append(Violation(ViolationKind.BAD_SHAPE, team + 1,
                                        detail=f"Schedule row must have {size.weeks} weeks"))
        elif not all(_is_int(v) and 0 <= v < size.n for v in row):
            violations.append(Violation(ViolationKind.BAD_SHAPE, team + 1,
                                        detail=f"Opponents must be team ids 1..{size.n}"))
    return violations


def validate_tournament(tournament):
    """Check the travel matrix, the schedule and their venue consistency."""
    size = tournament.size
    violations = validate_travel(tournament.travel, size)
    if tournament.schedule is None:
        violations.append(Violation(ViolationKind.BAD_SHAPE, detail="Tournament has no schedule"))
        return violations

    rows = _grid_rows(tournament.schedule)
    shape_violations = _schedule_shape_violations(rows, size)
    if shape_violations:
        return violations + shape_violations

    cells = np.array(rows, dtype=np.int16)
    everyone = set(range(size.n))
    for team in range(size.n):
        for week in range(size.weeks):
            opponent = cells[team, week]
            if opponent == team:
                violations.append(Violation(ViolationKind.SELF_PLAY, team + 1, week + 1, "Team plays itself"))
            elif cells[opponent, week] != team:
                violations.append(Violation(
                    ViolationKind.SYMMETRY_BROKEN, team + 1, week + 1,
                    f"Plays team {opponent + 1}, who plays team {cells[opponent, week] + 1}"))

        for label, start in (('first', 0), ('second', size.half)):
            opponents = cells[team, start:start + size.half].tolist()
            if sorted(opponents) != sorted(everyone - {team}):
                violations.append(Violation(ViolationKind.NOT_ROUND_ROBIN, team + 1, start + 1,
                                            f"The {label} half does not meet every other team exactly once"))

        for week in range(size.half):
            if cells[team, week + size.half] != cells[team, week]:
                violations.append(Violation(
                    ViolationKind.NOT_MIRRORED, team + 1, week + size.half + 1,
                    f"Opponent differs from week {week + 1}"))

    travel_rows = _grid_rows(tournament.travel)
    if any(v.kind == ViolationKind.BAD_SHAPE for v in violations) or len(travel_rows) != size.n:
        return violations

    bits = np.array(travel_rows, dtype=np.int8)
    for team in range(size.n):
        for week in range(size.weeks):
            opponent = cells[team, week]
            if opponent == team:
                continue
            reported_by_opponent = opponent < team and cells[opponent, week] == team
            if bits[team, week] == bits[opponent, week] and not reported_by_opponent:
                venue = 'away' if bits[team, week] == AWAY else 'home'
                violations.append(Violation(ViolationKind.VENUE_INCONSISTENT, team + 1, week + 1,
                                            f"Team {team + 1} and team {opponent + 1} are both {venue}"))
    return violations
