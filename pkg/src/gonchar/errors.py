"""Exception hierarchy shared across the toolkit."""

from __future__ import annotations


class GoncharError(Exception):
    """Base class for all toolkit errors."""


class DomainError(GoncharError, ValueError):
    """An argument lies outside an operation's documented domain."""


class InexactDivisionError(GoncharError):
    """Polynomial division left a nonzero remainder (or a non-integer quotient).

    The offending remainder is attached so callers can inspect it.
    """

    def __init__(self, message: str, remainder=None):
        super().__init__(message)
        self.remainder = remainder


class NumericFailure(GoncharError):
    """A certified numeric computation could not reach its target within budget.

    Raised instead of returning an uncertified value; carries the precision or
    iteration ceiling that was exhausted in the message.
    """


class UnresolvedClassification(GoncharError):
    """A zero could not be placed in any region even after escalation."""


class SkipPrime(GoncharError):
    """Control-flow signal: the reduction mod p is unusable (non-squarefree)."""


class InternalInvariantError(GoncharError):
    """Two independent routes to the same quantity disagreed.

    This is always a bug or a broken assumption, never a recoverable
    condition; nothing in the package catches it.
    """
