"""Exception types shared across the package."""


class WZFormsError(Exception):
    """Base class for all package errors."""


class DivisionByZero(WZFormsError, ZeroDivisionError):
    """A denominator is identically zero."""


class InvalidInput(WZFormsError, ValueError):
    """An argument violates a documented precondition."""


class NotAWZForm(WZFormsError, ValueError):
    """A tuple of rational functions fails the compatibility conditions,
    or decomposition encountered evidence that it must fail them."""


class ParseError(WZFormsError, ValueError):
    """Malformed expression text.  Carries 1-based line/column."""

    def __init__(self, message, line, column):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column
