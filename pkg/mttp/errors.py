"""Exception hierarchy for the mTTP solver.

Validators never raise: they return lists of violations. The exceptions
below are reserved for misuse (bad sizes, malformed input) and for search
procedures that run out of budget.
"""


class MttpError(Exception):
    """Base class for every error raised by the package."""


class InvalidInstanceError(MttpError, ValueError):
    """Team count is odd, too small, or outside a supported range."""


class ShapeError(MttpError, ValueError):
    """A sequence or matrix does not have the shape the instance requires."""

    def __init__(self, violation):
        super().__init__(violation.detail)
        self.violation = violation


class InvalidTravelMatrixError(MttpError, ValueError):
    """A travel matrix is structurally malformed and cannot be scheduled."""

    def __init__(self, violations):
        detail = '; '.join(str(v) for v in violations[:3])
        if len(violations) > 3:
            detail += f' (+{len(violations) - 3} more)'
        super().__init__(f"Invalid travel matrix: {detail}")
        self.violations = list(violations)


class PatternGenerationError(MttpError, RuntimeError):
    """A rejection-sampling loop exhausted its retry budget."""


class SizeMismatchError(MttpError, ValueError):
    """Two individuals of different instance sizes were combined."""


class NoFeasibleSolutionError(MttpError):
    """The GA never found a travel matrix the scheduler could complete."""

    def __init__(self, candidate, history):
        fitness = candidate.fitness if candidate is not None else None
        super().__init__(f"No schedulable individual found (best unscheduled fitness: {fitness})")
        self.candidate = candidate
        self.history = list(history)


class TournamentFileError(MttpError):
    """A tournament file could not be parsed."""
