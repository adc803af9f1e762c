"""Shared exception types."""


class GraphParseError(ValueError):
    """Raised when a graph text file cannot be parsed."""


class BudgetExceededError(RuntimeError):
    """Raised when an enumeration or term budget would be exceeded."""


class ConvergenceError(RuntimeError):
    """Raised when the Newton solver exhausts its iteration budget."""


class EngineConsistencyError(RuntimeError):
    """Raised when independently computed quantities disagree.

    This always signals a bug (or a violated engine invariant such as
    non-integral interpolation), never a property of the input.
    """
