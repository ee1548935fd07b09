"""Exception hierarchy shared by every rainbowlab module."""


class RainbowLabError(Exception):
    """Base class for all library errors."""


class GraphError(RainbowLabError, ValueError):
    pass


class OutOfRange(GraphError):
    pass


class SelfLoop(GraphError):
    pass


class DuplicateEdge(GraphError):
    pass


class BadColor(GraphError):
    pass


class NoSuchEdge(GraphError):
    pass


class InvalidParams(RainbowLabError, ValueError):
    pass


class InvalidPacking(RainbowLabError, ValueError):
    pass


class NotInV0(InvalidPacking):
    pass


class DegreeTooLow(RainbowLabError, ValueError):
    pass


class BudgetExceeded(RainbowLabError):
    """Raised when a node budget runs out before a search is exhausted.

    ``best`` carries the strongest result proved before the budget ran out.
    """

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class InvariantViolation(RainbowLabError):
    """An internal consistency check failed; indicates a bug, not bad input."""
