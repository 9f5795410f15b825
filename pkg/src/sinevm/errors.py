"""Exception types raised across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class ConvergenceError(ArithmeticError):
    """A series or adaptive scheme failed to reach its tolerance."""


class DegenerateInputError(ValueError):
    """Input is well-typed but leaves nothing to compute (empty grid, zero mass)."""


class VanishingDensityError(ZeroDivisionError):
    """Division by a density value that is numerically zero."""
