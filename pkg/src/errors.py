"""
Error types shared by every subpackage.

All of them derive from ``MaxsubError`` which itself is a ``ValueError`` so
callers that only guard against bad values keep working.
"""

from __future__ import annotations

from typing import Any, Optional


class MaxsubError(ValueError):
    """Base class for all domain errors."""


class ParseError(MaxsubError):
    """Malformed expression or document text."""

    def __init__(self, message: str, position: Optional[int] = None) -> None:
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class ExponentDomainError(MaxsubError):
    """Exponent outside the domain allowed for a variable (e.g. y^(1/2))."""


class ConductorMismatch(MaxsubError):
    """A root of unity or element does not live in the requested field."""


class ZeroOrUndetermined(MaxsubError):
    """No nonzero term could be found: the series is exactly zero or undetermined."""

    def __init__(self, message: str, reason: str = "undetermined") -> None:
        super().__init__(message)
        self.reason = reason


class ZeroDivision(MaxsubError, ZeroDivisionError):
    """Division by an exact zero."""


class InsufficientPrecision(MaxsubError):
    """A finite prefix does not reach the exponent that was asked for."""


class InvalidPair(MaxsubError):
    """An admissible pair violates its nesting conditions."""


class ZeroInput(MaxsubError):
    """An operation that needs a nonzero polynomial received zero."""


class IncompleteSplitting(MaxsubError):
    """The configured cyclotomic field does not contain the roots needed."""

    def __init__(self, message: str, residual: Any = None, field: Any = None) -> None:
        super().__init__(message)
        self.residual = residual
        self.field = field


class SingleBranch(MaxsubError):
    """Separation needs at least two distinct branches."""


class Undetermined(MaxsubError):
    """The precision cap was reached before a leading term was certified."""

    def __init__(self, message: str, precision: Any = None) -> None:
        super().__init__(message)
        self.precision = precision


class InconsistentFlags(MaxsubError):
    """Normalization flags that no maximal subalgebra can satisfy."""


class InvalidDescriptor(MaxsubError):
    """A descriptor violates the invariants of its case."""


class PointOffVariety(MaxsubError):
    """A closed point does not satisfy the relations of its algebra."""


class InvalidTangent(MaxsubError):
    """A tangent vector is zero or not orthogonal to the relation gradients."""


class UnsupportedConstruction(MaxsubError):
    """Requested non-extending construction is not available."""


class SingularPoint(MaxsubError):
    """The curve is singular at the requested point."""


class PointOffCurve(MaxsubError):
    """The point does not lie on the curve."""


class PreconditionFailed(MaxsubError):
    """The non-coordinate construction preconditions do not hold."""


__all__ = [
    "MaxsubError",
    "ParseError",
    "ExponentDomainError",
    "ConductorMismatch",
    "ZeroOrUndetermined",
    "ZeroDivision",
    "InsufficientPrecision",
    "InvalidPair",
    "ZeroInput",
    "IncompleteSplitting",
    "SingleBranch",
    "Undetermined",
    "InconsistentFlags",
    "InvalidDescriptor",
    "PointOffVariety",
    "InvalidTangent",
    "UnsupportedConstruction",
    "SingularPoint",
    "PointOffCurve",
    "PreconditionFailed",
]
