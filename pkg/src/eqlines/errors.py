"""Exception types shared across the package."""


class ValidationError(ValueError):
    """Input data violates a structural requirement (shape, symmetry, norm)."""


class PreconditionError(ValueError):
    """An operation was called outside the domain where it is defined."""


class ConvergenceError(RuntimeError):
    """An iterative routine failed to converge within its sweep budget."""
