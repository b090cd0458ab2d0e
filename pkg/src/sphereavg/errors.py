"""Exception hierarchy shared by all modules."""


class SphereAvgError(Exception):
    """Base class for every error raised by the package."""


class InvalidArgument(SphereAvgError, ValueError):
    pass


class CapacityError(SphereAvgError, OverflowError):
    """A count or output does not fit the requested fixed-width container."""


class BudgetExceeded(SphereAvgError):
    """Work or output size would exceed the configured compute budget."""


class NonConvergenceError(SphereAvgError):
    pass


class InvariantViolation(SphereAvgError, AssertionError):
    """An internal consistency check failed."""


class DegenerateInput(SphereAvgError, ZeroDivisionError):
    """A normalising quantity vanishes (e.g. f is zero on the whole window)."""
