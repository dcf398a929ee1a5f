"""Shared exception types.

The CLI maps these onto exit codes: input problems (ParseError and plain
ValueError) exit 2, resource caps exit 3, and VerificationError is a bug
signal that is allowed to propagate.
"""


class ParseError(ValueError):
    """Malformed input text; carries a 1-based line/column position."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            where = f"line {line}" + (f", col {column}" if column is not None else "")
            message = f"{where}: {message}"
        super().__init__(message)


class CapExceededError(RuntimeError):
    """An enumeration would exceed the configured size cap."""


class DegenerateDomainError(ValueError):
    """A strict-policy operation received a degenerate domain."""


class EmptyDomainError(ValueError):
    """An operation that assumes a non-empty domain received an empty one."""


class VerificationError(AssertionError):
    """A mandatory internal re-verification failed.  Always a bug."""
