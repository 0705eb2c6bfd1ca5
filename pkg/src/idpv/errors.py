"""Exception hierarchy shared by the whole package."""


class IdpvError(Exception):
    """Base class for all library errors."""


class CharDivisionError(IdpvError):
    """A division by the characteristic was required (e.g. n! with n >= p)."""


class NotAUnit(IdpvError):
    """Inversion of a non-invertible ring element was attempted."""


class OrderMismatch(IdpvError):
    """A truncated computation was asked for more orders than are derivable."""


class RootObstruction(IdpvError):
    """m-th root with the characteristic dividing m."""


class SingularAtOrigin(IdpvError):
    """Constant-term matrix of a series matrix is singular."""


class SpanNotClosed(IdpvError):
    """A derivative leaves the linearly expressible coefficient space."""


class BadPoint(IdpvError):
    """An inverted denominator vanishes at the requested expansion point."""


class ZeroInput(IdpvError):
    """The zero element was passed where a nonzero one is required."""


class ShiftUnavailable(IdpvError):
    """The exact substitution t -> t+T needs polynomial coefficients."""


class CharNotZero(IdpvError):
    """A characteristic-zero-only construction was used in characteristic p."""


class BaseMismatch(IdpvError):
    """Two objects over different base rings (or truncation orders) were combined."""


class InsufficientOrder(IdpvError):
    """The series order is too small for the requested bounds."""


class ReductionOverflow(IdpvError):
    """Reduction produced equations beyond the stated degree bound."""


class NotDiagonal(IdpvError):
    """The group equations are not diagonal/monomial in the given coordinates."""


class ParseError(IdpvError):
    """Syntax error with position information."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class SemanticError(IdpvError):
    """Well-formed input that violates a construction precondition."""
