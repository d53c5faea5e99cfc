"""Exception hierarchy shared across the package.

The CLI maps these onto exit codes: ValidationError (and subclasses) exit 2,
LimitExceeded exits 3, anything else exits 1.
"""


class DegexError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(DegexError, ValueError):
    """Invalid input: bad parameters, malformed edges, out-of-range vertices."""


class FormatError(ValidationError):
    """Malformed .hg text. Carries the 1-based line number when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class LimitExceeded(DegexError):
    """An enumeration or exact-computation budget was exceeded."""
