"""Exception types shared across the package."""


class FiberDimError(Exception):
    """Base class for all library-specific errors."""


class CapExceededError(FiberDimError):
    """An enumeration or search cap was exceeded.

    This is a resource refusal, never a mathematical statement: the caller
    may retry with larger limits.
    """

    def __init__(self, message, volume=None):
        super().__init__(message)
        self.volume = volume


class BudgetExceededError(FiberDimError):
    """A bounded search ran out of budget before it finished exhaustively."""


class MoveSetError(FiberDimError):
    """A candidate set of vectors violates the move-set axioms."""


class RankDeficientError(FiberDimError):
    """A matrix did not have the rank an operation requires."""


class DimensionMismatchError(FiberDimError):
    """Two objects live in different ambient dimensions."""


class ImproperColoringError(FiberDimError):
    """A coloring assigns equal colors to adjacent nodes."""


class EmbeddingError(FiberDimError):
    """A constructed embedding failed its own verification."""


class ParseError(FiberDimError):
    """Malformed textual input."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
