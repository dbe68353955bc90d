"""Exception types shared across the package."""


class GencoreError(Exception):
    """Base class for errors raised by gencore."""


class DimensionMismatch(GencoreError, ValueError):
    pass


class NonSquare(DimensionMismatch):
    pass


class ContextMismatch(GencoreError, ValueError):
    """Operands carry different ring contexts (scalar mode or involution)."""


class NoSolution(GencoreError):
    """The requested inverse or linear system has no solution.

    ``certificate`` optionally holds an exact witness of inconsistency
    (a vector ``y`` with ``y.A = 0`` and ``y.b = 1`` over Q).
    """

    def __init__(self, message="no solution", certificate=None):
        super().__init__(message)
        self.certificate = certificate


class NotApplicable(GencoreError):
    """A check's standing hypothesis does not hold for the given input."""


class HypothesisViolated(GencoreError):
    """An operation's algebraic preconditions (commutation, orthogonality) fail."""


class RankZero(GencoreError):
    pass


class SingularMatrix(GencoreError, ZeroDivisionError):
    """Exact inverse requested for a singular matrix."""


class SingularBlock(GencoreError, ArithmeticError):
    """A block that should be invertible is numerically singular."""


class LawViolation(GencoreError, AssertionError):
    """A guaranteed identity failed on a concrete input (a defect)."""
