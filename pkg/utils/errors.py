class EngineError(Exception):
    """Base class for engine errors"""

    def __init__(self, message, exit_code=2, payload=None):
        super().__init__(message)
        self.message = message
        self.exit_code = exit_code
        self.payload = payload

    def to_dict(self):
        rv = dict(self.payload or ())
        rv["message"] = self.message
        rv["code"] = self.exit_code
        rv["error"] = type(self).__name__
        return rv


class UsageError(EngineError):
    """Bad command-line arguments or unknown names."""


class InstanceParseError(EngineError):
    """Syntax, reference or validation error inside instance text."""

    def __init__(self, message, line=0, column=0, payload=None):
        super().__init__(f"line {line}, column {column}: {message}", 2, payload)
        self.line = line
        self.column = column

    def to_dict(self):
        rv = super().to_dict()
        rv["line"] = self.line
        rv["column"] = self.column
        return rv


class PreconditionError(EngineError):
    """An operation was called outside its precondition."""


class UndefinedInvariantError(EngineError):
    """The requested invariant is not defined for this input."""


class UnsupportedInstanceError(EngineError):
    """Instance data lies outside the monomial class handled by the engine."""


class EngineInvariantError(EngineError):
    """Internal consistency check failed; always a bug."""

    def __init__(self, message, payload=None):
        super().__init__(message, 1, payload)


class TheoremViolationError(EngineError):
    """Two independent computations of a theorem's sides disagree."""

    def __init__(self, message, payload=None):
        super().__init__(message, 1, payload)
