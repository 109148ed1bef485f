class ReconfigError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(ReconfigError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ValidationError(ReconfigError):
    """An object violates a structural invariant (bad step, bad endpoint, ...)."""


class BudgetExceeded(ReconfigError):
    """Raised instead of silently degrading when a search would be too large."""
