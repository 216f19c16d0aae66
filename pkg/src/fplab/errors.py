"""Shared exception types."""


class FplabError(Exception):
    """Base class for all package-specific errors."""


class ParseError(FplabError):
    """Syntax or lookup error while parsing an expression or session file."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where += f" at line {line}"
        if column is not None:
            where += f"{',' if line is not None else ' at'} column {column}"
        super().__init__(message + where)


class ContextMismatchError(FplabError):
    """Operands are bound to different ring contexts."""


class BudgetExceededError(FplabError):
    """A Groebner computation exceeded its S-pair budget."""


class NotStabilizedError(FplabError):
    """An iterated ideal chain did not stabilize within its step limit.

    Carries the partial chain report so callers can inspect it.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report
