"""Shared exception types."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class BracketError(ValueError):
    """A root bracket is invalid (no sign change between the endpoints)."""


class ConvergenceError(RuntimeError):
    """An iterative routine exhausted its budget without reaching tolerance."""


class ResourceError(RuntimeError):
    """A computation exceeds the configured size limit."""
