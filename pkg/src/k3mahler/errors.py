"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class NumericalDegeneracyError(ArithmeticError):
    """A numerical routine hit a degenerate configuration it cannot recover from."""


class ConsistencyError(RuntimeError):
    """Two independent computations of the same quantity disagree."""
