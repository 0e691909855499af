"""Exception types shared across the package."""


class GreensumError(Exception):
    """Base class for errors raised by greensum."""


class DomainError(GreensumError, ValueError):
    """Argument outside the domain where a function is defined."""


class PoleError(DomainError):
    """Argument sits on a pole (e.g. Gamma at a non-positive integer)."""


class SingularPointError(DomainError):
    """Closed form evaluated on its declared singular locus."""


class QuadratureError(GreensumError, RuntimeError):
    """Adaptive integration did not reach the requested tolerance."""


class DifferentiationError(GreensumError, RuntimeError):
    """Finite-difference derivative too noisy to trust."""


class BoundaryConditionError(GreensumError, ValueError):
    """Boundary data inconsistent or insufficient to fix a solution."""


class BracketError(GreensumError, RuntimeError):
    """Eigenvalue search could not bracket the requested state."""
