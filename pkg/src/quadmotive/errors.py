"""Exception types raised across the package."""

from __future__ import annotations


class QuadMotiveError(ValueError):
    """Base class for all library errors."""


class DegenerateInput(QuadMotiveError):
    """Zero values, empty forms or forms too small to define a quadric."""


class DomainError(QuadMotiveError):
    """The operation is not defined for the given field, place or shape."""


class ValidationError(QuadMotiveError):
    """A descriptor violates one of its consistency constraints."""


class ResourceLimit(QuadMotiveError):
    """An input exceeds a configured computational bound."""


class LiteralError(ValidationError):
    """A literal could not be parsed; records the offending token."""

    def __init__(self, message: str, token: str, position: int):
        super().__init__(f"{message}: {token!r} at position {position}")
        self.token = token
        self.position = position
