"""Exception types shared across the package."""


class TclError(Exception):
    """Base class for all library errors."""


class InvalidArgumentError(TclError):
    """An argument is outside the documented domain of an operation."""


class ParseError(TclError):
    """A text input could not be parsed; carries the 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class PreconditionError(TclError):
    """A documented precondition of a verified operation does not hold."""


class InvariantViolation(TclError):
    """An internal proof step failed; carries a witness for debugging.

    Seeing this exception means the implementation (not the input) is wrong.
    """

    def __init__(self, message: str, witness=None):
        self.witness = witness
        super().__init__(message)


class SizeLimitError(TclError):
    """The instance exceeds the documented budget of an exact solver."""


class GenerationError(TclError):
    """A rejection sampler ran out of attempts; carries the best value seen."""

    def __init__(self, message: str, best_delta: int | None = None, attempts: int = 0):
        self.best_delta = best_delta
        self.attempts = attempts
        super().__init__(message)
