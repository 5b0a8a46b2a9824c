"""Exception hierarchy shared by every loomgen module."""


class LoomgenError(Exception):
    """Base class for all errors raised by loomgen."""


class DimensionMismatch(LoomgenError, ValueError):
    pass


class SingularMatrix(LoomgenError, ZeroDivisionError):
    pass


class ZeroVector(LoomgenError, ValueError):
    pass


class ParseError(LoomgenError, ValueError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)


class UnknownVariable(ParseError):
    pass


class NotPureDifference(LoomgenError, ValueError):
    pass


class PreconditionViolated(LoomgenError, ValueError):
    pass


class UnsupportedFormat(LoomgenError, ValueError):
    pass


class SelfCheckFailed(LoomgenError, RuntimeError):
    """The verifier rejected a loop that synthesis produced."""
