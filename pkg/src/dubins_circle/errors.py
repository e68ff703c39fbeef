"""Domain exceptions."""


class DubinsCircleError(Exception):
    """Base class for errors raised by this library."""


class DegenerateDirectionError(DubinsCircleError):
    """A direction was requested where none is defined (zero-length vector)."""


class InfeasiblePathError(DubinsCircleError):
    """The requested CSC type does not exist for the given endpoints.

    For inner-tangent types (RSL, LSR) this means the turn circles are
    closer than 2r, so no inner tangent exists.
    """


class AtDiscontinuityError(DubinsCircleError):
    """The length derivative was queried at (or too close to) a discontinuity."""
