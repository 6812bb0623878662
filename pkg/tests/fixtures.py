"""Hand-checked instances shared by the test cases."""

# Four teams: travel flags and the schedule (1-based opponents) that realises them.
FOUR_TEAM_TRAVEL = [
    [0, 0, 0, 1, 1, 1],
    [1, 0, 0, 0, 1, 1],
    [0, 1, 1, 1, 0, 0],
    [1, 1, 1, 0, 0, 0],
]
FOUR_TEAM_TRIPS = [4, 5, 4, 4]
FOUR_TEAM_SCHEDULE = [
    [2, 3, 4, 2, 3, 4],
    [1, 4, 3, 1, 4, 3],
    [4, 1, 2, 4, 1, 2],
    [3, 2, 1, 3, 2, 1],
]

# Six teams: three seed rows and the full matrix the swapping method builds from them.
SIX_TEAM_SEEDS = [
    [0, 0, 1, 1, 0, 1, 1, 0, 0, 1],
    [1, 0, 1, 0, 1, 0, 1, 0, 1, 0],
    [1, 0, 1, 1, 0, 0, 1, 0, 0, 1],
]
SIX_TEAM_TRAVEL = SIX_TEAM_SEEDS + [
    [1, 1, 0, 0, 1, 0, 0, 1, 1, 0],
    [0, 1, 0, 1, 0, 1, 0, 1, 0, 1],
    [0, 1, 0, 0, 1, 1, 0, 1, 1, 0],
]


def venue_walk_trips(seq):
    """Count trips by walking the season city by city, starting and ending at home."""
    home = ('home',)
    location, trips = home, 0
    for week, flag in enumerate(seq):
        destination = home if flag == 0 else ('away', week)
        if destination != location:
            trips += 1
            location = destination
    if location != home:
        trips += 1
    return trips
