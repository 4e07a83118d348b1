"""Exception hierarchy shared across the toolkit.

The CLI maps these onto exit codes: ConfigError -> 2, DataValidationError
(and subclasses) -> 3, NumericalError -> 4.
"""


class SatkitError(Exception):
    """Base class for all toolkit errors."""


class ConfigError(SatkitError):
    """Invalid experiment configuration or CLI usage."""


class ArgumentError(SatkitError, ValueError):
    """An operation was called with arguments violating its contract."""


class DataValidationError(SatkitError):
    """Corpus or input-file content fails validation."""


class ParseError(DataValidationError):
    """Malformed input file; carries the 1-based line number."""

    def __init__(self, message: str, line_number: int | None = None):
        super().__init__(message)
        self.line_number = line_number


class DuplicateIdError(DataValidationError):
    """Two records share a document id."""


class CrossSourceViolation(DataValidationError):
    """A training publication source also appears in validation or test.

    Kept distinct from plain validation errors because it silently
    invalidates the cross-domain evaluation protocol.
    """


class NumericalError(SatkitError):
    """Numerical failure (non-SPD system, NaN score, zero norm).

    ``pivot_index`` is the 0-based index of the failing Cholesky pivot
    when the error came from a factorization.
    """

    def __init__(self, message: str, pivot_index: int | None = None):
        super().__init__(message)
        self.pivot_index = pivot_index
