"""Exception types raised for precondition failures.

Theorem violations are never raised; they are report content.
"""

from __future__ import annotations


class AlmError(Exception):
    """Base class for every error the workbench raises."""


class AlmSyntaxError(AlmError):
    """Malformed .alm document."""

    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class UnknownElementError(AlmSyntaxError):
    """A table or order entry names a label not declared in `elements:`."""


class RaggedTableError(AlmSyntaxError):
    """A table section does not have n rows of n entries."""


class NotALatticeError(AlmError):
    """An order has a pair without a unique supremum or infimum."""

    def __init__(self, message: str, pair: tuple[str, str]):
        super().__init__(message)
        self.pair = pair


class InconsistentTablesError(AlmError):
    """Join and meet tables disagree about the order they induce."""


class NotPartialOrderError(AlmError):
    """The relation derived from meet is not a partial order."""

    def __init__(self, message: str, witness: tuple[str, ...]):
        super().__init__(message)
        self.witness = witness


class BoundExceededError(AlmError):
    """A carrier or search size is above the configured bound."""


class NotAnIdealError(AlmError):
    """A subset handed to an ideal operation is not an ideal."""

    def __init__(self, message: str, witness: tuple[str, ...] | None = None):
        super().__init__(message)
        self.witness = witness


class IllDefinedOperationError(AlmError):
    """A quotient operation depends on the choice of representatives."""

    def __init__(self, message: str, witness: tuple[str, ...]):
        super().__init__(message)
        self.witness = witness


class UnknownPropertyError(AlmError):
    """A property id is not in the theorem registry."""
