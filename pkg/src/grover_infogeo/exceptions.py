"""Exception types shared across the package."""


class DomainError(ValueError):
    """Input lies outside the domain where a quantity is defined."""


class ConvergenceError(RuntimeError):
    """A quadrature, root-finder or cross-check failed to meet its tolerance."""
