"""Exception types shared across the package."""


class ExtremalPrimesError(Exception):
    """Base class for all errors raised by this package."""


class BadReductionError(ExtremalPrimesError):
    """The prime divides the curve discriminant."""


class InvalidPrimeError(ExtremalPrimesError):
    """A value required to be prime is not."""


class AmbiguousOrderError(ExtremalPrimesError):
    """The group order could not be pinned down uniquely."""


class HasseViolationError(ExtremalPrimesError):
    """A trace value with a_p^2 > 4p was supplied."""


class RangeTooLargeError(ExtremalPrimesError):
    """Prime enumeration requested beyond the supported cap."""


class DomainError(ExtremalPrimesError):
    """Argument outside the mathematical domain of the operation."""


class QuadratureFailure(ExtremalPrimesError):
    """Adaptive quadrature did not converge within the node budget."""


class InconsistentLocalDataError(ExtremalPrimesError):
    """Bad-prime local data is missing or contradicts its reduction kind."""


class UnsupportedCaseError(ExtremalPrimesError):
    """A parameter combination the local-factor formulas do not cover."""


class PoleError(ExtremalPrimesError):
    """Gamma-factor evaluation at a pole of one of its Gamma terms."""


class ConfigError(ExtremalPrimesError):
    """Bad command-line configuration."""
