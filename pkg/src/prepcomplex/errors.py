"""Error taxonomy shared across the package."""


class SizeError(ValueError):
    """Qubit count or object size outside the configured limits."""


class ParseError(ValueError):
    """Malformed textual input; carries the offending position."""

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class NetTooCoarseError(RuntimeError):
    """The basic-approximation net cannot seed a contracting recursion.

    Raised instead of looping: the caller must rebuild with a larger l0.
    """


class BudgetError(RuntimeError):
    """Requested precision unreachable at the configured recursion depth."""


class EmptyCandidateError(RuntimeError):
    """No candidate circuit passed the precision check."""
