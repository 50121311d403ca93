"""Exception hierarchy.

Every error raised on purpose by the package derives from :class:`TileGraphError`.
The ``exit_code`` attribute is what the command line frontend returns:
1 for invalid input data, 2 for a violated theorem (an internal bug signal)
and 3 for a resource limit.
"""


class TileGraphError(Exception):
    exit_code = 1


class DomainError(TileGraphError):
    """Invalid basic data or arguments."""


class EmptyRows(DomainError):
    pass


class RowsNotDecreasing(DomainError):
    pass


class NotHereditary(DomainError):
    pass


class NegativeDegree(DomainError):
    pass


class NotInvertible(DomainError):
    pass


class CornersNotInvertible(DomainError):
    pass


class TraceNonZero(DomainError):
    pass


class ConstantNotValid(DomainError):
    pass


class SourceRangeMismatch(DomainError):
    pass


class DegreeOutOfRange(DomainError):
    pass


class InvalidPath(DomainError):
    pass


class HypothesisFailed(DomainError):
    pass


class DimensionMismatch(DomainError):
    pass


class NoSolution(DomainError):
    pass


class ColumnsDependent(DomainError):
    pass


class SublatticeNotContained(DomainError):
    pass


class InfiniteK0(DomainError):
    pass


class NoWitnessUpToBound(DomainError):
    """No aperiodicity witness below the search bound.

    The partial result is attached as ``report``; its ``status`` tells an
    inconclusive search apart from a certified periodicity.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class TableMismatch(DomainError):
    pass


class TheoremViolation(TileGraphError):
    """A proved identity failed to hold; indicates a bug."""

    exit_code = 2


class BijectionFailure(TheoremViolation):
    pass


class CountMismatch(TheoremViolation):
    pass


class EnumerationTooLarge(TileGraphError):
    exit_code = 3
