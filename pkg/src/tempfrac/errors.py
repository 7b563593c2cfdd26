"""Exception hierarchy shared by every module of :mod:`tempfrac`."""

from __future__ import annotations


class TfcError(Exception):
    """Base class for all library errors."""


class DomainError(TfcError, ValueError):
    """An argument lies outside the region where the operation is defined."""


class PoleError(DomainError):
    """A gamma-type function was asked for its value at a pole."""


class NonConvergent(TfcError, ArithmeticError):
    """A quadrature or series did not reach its tolerance within budget."""


class RegularityError(TfcError):
    """The declared regularity of a function is too weak for the operation."""


class EvalError(TfcError, ArithmeticError):
    """A compiled expression produced a non-finite value."""


class CostExceeded(TfcError):
    """A computation would exceed its effort budget."""


class SynchronyError(DomainError):
    """Two functions expected to be synchronous are not."""


class MonotonicityError(DomainError):
    """A function expected to be increasing is not."""


class PositivityError(DomainError):
    """A function expected to be positive is not."""


class ParseError(TfcError, ValueError):
    """Malformed expression text.

    Attributes
    ----------
    offset:
        Byte offset into the source text where parsing failed.
    expected:
        Sorted tuple of token descriptions that would have been accepted.
    """

    def __init__(self, message: str, offset: int, expected: tuple[str, ...] = ()):
        self.offset = offset
        self.expected = tuple(sorted(set(expected)))
        detail = f" (expected one of: {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{message} at offset {offset}{detail}")
