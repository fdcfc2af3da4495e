"""Exception hierarchy shared by all lacsphere modules."""


class LacsphereError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(LacsphereError, ValueError):
    """An argument is outside the mathematical domain of the operation."""


class DegreeOverflowError(LacsphereError, OverflowError):
    """A running product left the representable floating-point range.

    Carries the degree at which the overflow occurred.
    """

    def __init__(self, message, degree):
        super().__init__(message)
        self.degree = degree


class ConvergenceError(LacsphereError, RuntimeError):
    """An iterative procedure failed to converge within its budget.

    ``last_values`` holds the trailing iterates, when meaningful.
    """

    def __init__(self, message, last_values=None):
        super().__init__(message)
        self.last_values = last_values


class SpectrumError(LacsphereError, ValueError):
    """A degree sequence violates the lacunary gap condition."""


class CapacityError(LacsphereError, ValueError):
    """A quadrature grid cannot resolve the requested polynomial degree."""
