"""
Generation of feasible travel sequences and the swapping construction.

An individual is built from n/2 random "seed" sequences; the remaining n/2
rows are their bitwise complements (the swap). Every sequence is mirrored:
the second half is the complement of the first half.
"""

from itertools import groupby, product

import numpy as np

from mttp.errors import PatternGenerationError
from mttp.models.tournament import AWAY, HOME, MAX_RUN, InstanceSize, TravelMatrix

RETRY_BUDGET = 1000
SEED_LIMIT = 2 ** 64


def make_rng(seed):
    """
    Deterministic random stream for a 64-bit seed.

    Backed by numpy's PCG64 bit generator, whose stream for a given seed
    is identical on every platform.
    """
    seed = int(seed)
    if not 0 <= seed < SEED_LIMIT:
        raise ValueError(f"Seed must be an unsigned 64-bit integer, got {seed}")
    return np.random.Generator(np.random.PCG64(seed))


def _as_size(size):
    return size if isinstance(size, InstanceSize) else InstanceSize(size)


def swap_complement(seq):
    """Swap the home/away role of every game."""
    return (AWAY - np.asarray(seq, dtype=np.int8)).astype(np.int8)


def longest_run(seq):
    return max((len(list(group)) for _, group in groupby(np.asarray(seq).tolist())), default=0)


def is_valid_sequence(seq, size):
    """True when `seq` is a full-length, mirrored sequence with no run above three."""
    size = _as_size(size)
    bits = np.asarray(seq)
    if bits.shape != (size.weeks,) or not np.isin(bits, (HOME, AWAY)).all():
        return False
    if not np.array_equal(bits[size.half:], AWAY - bits[:size.half]):
        return False
    return longest_run(bits) <= MAX_RUN


def _mirror(first_half):
    first_half = np.asarray(first_half, dtype=np.int8)
    return np.concatenate([first_half, AWAY - first_half]).astype(np.int8)


def _extends_run(prefix, value):
    return len(prefix) >= MAX_RUN and all(v == value for v in prefix[-MAX_RUN:])


def random_sequence(size, rng):
    """
    Draw a feasible travel sequence.

    The first n-1 weeks are sampled left to right, never allowing a fourth
    equal flag in a row; the second half is their complement. Draws whose
    runs break across the half boundary are resampled.
    """
    size = _as_size(size)
    for _ in range(RETRY_BUDGET):
        first_half = []
        for _week in range(size.half):
            choices = [v for v in (HOME, AWAY) if not _extends_run(first_half, v)]
            first_half.append(choices[int(rng.integers(len(choices)))] if len(choices) > 1 else choices[0])
        seq = _mirror(first_half)
        if longest_run(seq) <= MAX_RUN:
            return seq
    raise PatternGenerationError(f"No feasible travel sequence for n={size.n} after {RETRY_BUDGET} draws")


def conflicts_with(candidate, chosen):
    """True if `candidate` equals or complements any already chosen row."""
    complement = swap_complement(candidate)
    return any(np.array_equal(candidate, row) or np.array_equal(complement, row) for row in chosen)


def canonical_partners(n):
    """Partner map pairing row k with row n/2 + k."""
    return tuple((k + n // 2) % n for k in range(n))


def build_from_seeds(seed_rows):
    """Rows 1..n/2 are the seeds, rows n/2+1..n their complements in order."""
    seeds = [np.asarray(row, dtype=np.int8) for row in seed_rows]
    rows = seeds + [swap_complement(row) for row in seeds]
    return TravelMatrix(np.vstack(rows), partners=canonical_partners(len(rows)))


def draw_seed(size, rng, chosen):
    """A random sequence that neither repeats nor complements a chosen row."""
    for _ in range(RETRY_BUDGET):
        candidate = random_sequence(size, rng)
        if not conflicts_with(candidate, chosen):
            return candidate
    raise PatternGenerationError(
        f"Could not draw a distinct travel sequence for n={size.n} after {RETRY_BUDGET} attempts")


def build_individual(size, rng):
    """A random travel matrix built with the swapping method."""
    size = _as_size(size)
    seeds = []
    while len(seeds) < size.pairs:
        seeds.append(draw_seed(size, rng, seeds))
    return build_from_seeds(seeds)


def complement_classes(size):
    """
    Every feasible sequence, grouped with its complement.

    Returns (home_first, away_first) pairs ordered by the home-first row.
    """
    size = _as_size(size)
    classes = []
    for first_half in product((HOME, AWAY), repeat=size.half - 1):
        seq = _mirror((HOME,) + first_half)
        if longest_run(seq) <= MAX_RUN:
            classes.append((seq, swap_complement(seq)))
    return classes
