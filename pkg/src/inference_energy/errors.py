"""Exception types shared across the analysis modules."""

from dataclasses import dataclass


class AnalysisError(ValueError):
    """A precondition of an analysis operation was not met."""


class NonPositiveInput(AnalysisError):
    pass


class ZeroBase(AnalysisError):
    pass


class DegenerateResolutions(AnalysisError):
    pass


class GroupMismatch(AnalysisError):
    pass


class NonFp32Baseline(AnalysisError):
    pass


class EmptyGroup(AnalysisError):
    pass


class TooFewPoints(AnalysisError):
    pass


class NonPositiveValue(AnalysisError):
    pass


class DegenerateDates(AnalysisError):
    pass


class NonPositiveSlope(AnalysisError):
    pass


class LengthMismatch(AnalysisError):
    pass


class ZeroVariance(AnalysisError):
    pass


class ZeroSlope(AnalysisError):
    pass


# validation issue kinds
MISSING_COLUMN = "MissingColumn"
UNPARSEABLE_VALUE = "UnparseableValue"
INVARIANT_VIOLATION = "InvariantViolation"
DANGLING_REFERENCE = "DanglingReference"


@dataclass(frozen=True)
class ValidationIssue:
    """One problem found while loading a data file.

    ``line`` is the 1-based line in the file (the header is line 1), or
    None for file-level problems such as a missing column.
    """

    kind: str
    file: str
    line: int | None
    message: str
    column: str | None = None

    def __str__(self):
        where = self.file if self.line is None else f"{self.file}:{self.line}"
        col = f" [{self.column}]" if self.column else ""
        return f"{where}: {self.kind}{col}: {self.message}"


class BundleValidationError(Exception):
    def __init__(self, issues):
        self.issues = list(issues)
        super().__init__(f"{len(self.issues)} validation issue(s); first: {self.issues[0]}")
