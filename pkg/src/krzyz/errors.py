"""Exception types shared across the package."""


class KrzyzError(Exception):
    """Base class for every error raised by this package."""


class OrderMismatchError(KrzyzError, ValueError):
    """Two coefficient vectors that must share a truncation order do not."""


class EmptyAtomSetError(KrzyzError, ValueError):
    """An operation needs at least one kernel atom."""


class DomainError(KrzyzError, ValueError):
    """Input lies outside an operation's mathematical domain."""


class NotOnBoundaryError(KrzyzError, ValueError):
    """Atom recovery needs a coefficient point on the boundary of the body."""


class ConditioningError(KrzyzError, ArithmeticError):
    """A linear system is too ill-conditioned to solve reliably."""


class NotNonnegativeError(KrzyzError, ValueError):
    """A trigonometric polynomial that must be >= 0 on the circle is not."""


class NumericError(KrzyzError, ArithmeticError):
    """A numerical routine failed to converge or lost too much accuracy."""


class CannotNormalizeError(KrzyzError, ValueError):
    """Rotation normalization needs a nonzero top coefficient."""


class NondifferentiableError(KrzyzError, ArithmeticError):
    """The objective |f_n| has no derivative where f_n = 0."""
