"""Exception hierarchy shared by all modules."""


class StieltjesError(Exception):
    """Base class for errors raised by this package."""


class DomainError(StieltjesError, ValueError):
    """Evaluation point lies on a branch cut or outside the valid domain."""


class QuadratureError(StieltjesError, ArithmeticError):
    """Adaptive quadrature did not reach the requested tolerance."""

    def __init__(self, message, error_estimate):
        super().__init__(f"{message} (achieved error estimate {error_estimate:.3e})")
        self.error_estimate = error_estimate


class NonExistenceError(StieltjesError, ArithmeticError):
    """The requested [L/M] approximant could not be constructed.

    Raised when the Hankel system is numerically singular and no reduced
    approximant satisfies accuracy-through-order.
    """

    def __init__(self, message, smallest_singular_value):
        super().__init__(f"{message} (smallest singular value {smallest_singular_value:.3e})")
        self.smallest_singular_value = smallest_singular_value


class MultiplePoleError(StieltjesError, ArithmeticError):
    """Two denominator roots coincide to within the separation tolerance."""


class StructureViolationError(StieltjesError, ArithmeticError):
    """Poles/residues violate the structure guaranteed for Stieltjes series."""


class ConfigurationError(StieltjesError, ValueError):
    """Invalid reconstruction or command configuration."""


class DegenerateContrastError(StieltjesError, ValueError):
    """The two constituents are identical (eps2/eps1 == 1)."""


class SchemaError(StieltjesError, ValueError):
    """Malformed CSV/JSON input."""
