"""Exception types."""


class CevianError(Exception):
    """Base class for all errors raised by the package."""


class SumViolation(CevianError, ValueError):
    pass


class NegativeAngle(CevianError, ValueError):
    pass


class DegenerateTriangle(CevianError, ValueError):
    pass


class DegenerateStart(DegenerateTriangle):
    pass


class CevianFailure(CevianError, ArithmeticError):
    """A Cevian foot fell outside its edge, i.e. the center was not interior."""


class BudgetExceeded(CevianError, MemoryError):
    pass


class DegenerateRegion(UserWarning):
    """Warning: a region image collapsed to a segment or a point."""
