"""
Exception hierarchy for the metric Lie n-algebra toolkit.

Every error raised on purpose by the library derives from NLieError, which is a
ValueError so callers that only know about ValueError still catch it.
"""

from typing import Optional


class NLieError(ValueError):
    """Base class for all semantic failures."""


class DimensionMismatchError(NLieError):
    """Operands live in spaces of different dimension (or a matrix is singular)."""


class DegenerateFormError(NLieError):
    """A symmetric form that must be nondegenerate is not."""


class ArityMismatchError(NLieError):
    """Two algebras with different n were combined."""


class NotAnIdealError(NLieError):
    """A subspace passed where an ideal is required is not one."""


class NotCoisotropicError(NLieError):
    """A subquotient was requested for an ideal that does not contain its perp."""


class NotIndecomposableError(NLieError):
    """An operation that needs an indecomposable algebra found a nondegenerate ideal."""


class NotValidatedError(NLieError):
    """A metric algebra failed the n-Jacobi or invariance check."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class ConstructionError(NLieError):
    """A builder assembled a candidate that did not pass validation."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class PairingConsistencyError(ConstructionError):
    """Mixed double-extension brackets disagree with metricity."""


class ExtractionError(NLieError):
    """Double-extension data could not be read off an algebra."""


class ConfigurationError(NLieError):
    """An environment setting could not be interpreted."""


class DocumentError(NLieError):
    """A text document is malformed or not in canonical form."""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.message = message
        self.line = line
        self.column = column
        if line is None:
            super().__init__(message)
        else:
            super().__init__(f"{line}:{column or 1}: {message}")


class InconsistencyError(NLieError):
    """An internal contradiction: a result violates a theorem it should obey."""
