"""Trip lower bounds and the published reference results for mirrored instances."""

import math
from dataclasses import dataclass

from mttp.models.tournament import MAX_RUN, InstanceSize


@dataclass(frozen=True)
class ReferenceRow:
    """Obtained result, literature lower bound and previously known result for one n."""
    n: int
    obtained: int
    lower_bound: int
    known: int

    @property
    def gap1(self):
        return self.obtained - self.lower_bound

    @property
    def gap2(self):
        return self.obtained - self.known


_REFERENCE = (
    (4, 17, 17, 17),
    (6, 48, 48, 48),
    (8, 80, 80, 80),
    (10, 130, 130, 130),
    (12, 192, 192, 192),
    (14, 253, 252, 256),
    (16, 348, 342, 342),
    (18, 432, 432, 434),
    (20, 521, 520, 526),
)


def naive_lower_bound(n):
    """
    Every team plays n-1 away games and, with at most three in a row, needs
    at least ceil((n-1)/3) separate away trips, each ending with a trip home.
    """
    size = n if isinstance(n, InstanceSize) else InstanceSize(n)
    return size.n * (size.half + math.ceil(size.half / MAX_RUN))


def reference_table():
    return [ReferenceRow(*row) for row in _REFERENCE]


def reference_row(n):
    n = n.n if isinstance(n, InstanceSize) else n
    for row in reference_table():
        if row.n == n:
            return row
    return None


def target_for(n):
    """Early-stop target: the literature bound when tabulated, else the naive bound."""
    row = reference_row(n)
    return row.lower_bound if row is not None else naive_lower_bound(n)
