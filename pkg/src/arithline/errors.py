"""Exception types shared across the library."""


class ArithLineError(Exception):
    """Base class for all library-specific errors."""


class DomainError(ArithLineError, ValueError):
    """Input lies outside the mathematical domain of an operation."""


class BracketError(ArithLineError, ValueError):
    """Root bracket does not enclose a sign change."""


class ConvergenceError(ArithLineError, RuntimeError):
    """Iteration budget exhausted before the requested tolerance was met."""


class EmptyError(ArithLineError, ValueError):
    """A required set (monomial span, scaled-interval lattice) is empty."""


class CapError(ArithLineError, ValueError):
    """Requested computation exceeds a configured size cap."""


class NoDecompositionError(ArithLineError, ValueError):
    """Zariski decomposition does not exist for the given parameters."""
