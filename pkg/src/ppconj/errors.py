"""Exception hierarchy shared by all modules."""

from __future__ import annotations

__all__ = [
    "PPConjError",
    "FieldMismatch",
    "FieldEscape",
    "SingularMatrix",
    "OrientationReversing",
    "InvalidMap",
    "Discontinuous",
    "NotIncreasing",
    "PoleInsideInterval",
    "EndPieceNotAffine",
    "LengthMismatch",
    "IntervalNotInvariant",
    "SlopeMismatch",
    "PreconditionViolated",
    "IterationCapExceeded",
    "NotTranslationGerms",
    "MixedSign",
    "InternalInvariantViolation",
    "ParseError",
    "ValidationError",
]


class PPConjError(Exception):
    """Base class for library errors."""


class FieldMismatch(PPConjError):
    pass


class FieldEscape(PPConjError):
    """A real quantity exists but does not lie in the configured field."""


class SingularMatrix(PPConjError):
    pass


class OrientationReversing(PPConjError):
    pass


class InvalidMap(PPConjError):
    """A piecewise map violates one of the H-membership invariants."""

    def __init__(self, message: str, location=None):
        super().__init__(message)
        self.location = location


class Discontinuous(InvalidMap):
    pass


class NotIncreasing(InvalidMap):
    pass


class PoleInsideInterval(InvalidMap):
    pass


class EndPieceNotAffine(InvalidMap):
    pass


class LengthMismatch(PPConjError):
    pass


class IntervalNotInvariant(PPConjError):
    pass


class SlopeMismatch(PPConjError):
    pass


class PreconditionViolated(PPConjError):
    pass


class IterationCapExceeded(PPConjError):
    pass


class NotTranslationGerms(PPConjError):
    pass


class MixedSign(PPConjError):
    """The interval is not a one-bump interval for the map."""


class InternalInvariantViolation(PPConjError):
    """A proven identity failed: this is a library bug."""


class ParseError(PPConjError):
    def __init__(self, message: str, location: str | None = None):
        super().__init__(f"{location}: {message}" if location else message)
        self.location = location


class ValidationError(PPConjError):
    """A map in a document fails validation; names the map and the broken invariant."""

    def __init__(self, name: str, cause: InvalidMap):
        super().__init__(f"map {name!r}: {type(cause).__name__}: {cause}")
        self.name = name
        self.invariant = type(cause).__name__
        self.location = getattr(cause, "location", None)
