"""Exception types shared across the package."""


class PcdError(Exception):
    """Base class for all package errors."""


class DegenerateInput(PcdError, ValueError):
    """Collinear, duplicate or too few points for the requested geometry."""


class OutsideDomain(PcdError, ValueError):
    """A point lies outside the triangle or convex hull it must belong to."""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class DegeneratePoint(PcdError, ValueError):
    """A point sits where the construction is undefined (e.g. a vertex)."""


class TooFewVertices(PcdError, ValueError):
    """A density or variance was requested for fewer than two vertices."""


class DomainError(PcdError, ValueError):
    """Parameter outside the domain of a closed-form expression."""


class DegenerateLimit(PcdError, ValueError):
    """The normal approximation does not hold at this parameter value."""
