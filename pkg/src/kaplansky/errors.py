"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class KaplanskyError(Exception):
    """Base class for all errors raised by this package."""

    kind = "error"


class InvalidParameter(KaplanskyError, ValueError):
    kind = "invalid-parameter"


class InvalidGroup(KaplanskyError, ValueError):
    """A multiplication table failed validation.

    ``triple`` holds the first offending element indices (original
    numbering of the raw table) when the failure is an associativity one.
    """

    kind = "invalid-group"

    def __init__(self, message: str, triple: tuple[int, ...] | None = None):
        super().__init__(message)
        self.triple = triple


class UnsupportedSpec(KaplanskyError, ValueError):
    kind = "unsupported-spec"


class Unsupported(KaplanskyError):
    kind = "unsupported"


class NoEmbedding(KaplanskyError, ValueError):
    kind = "no-embedding"


class BudgetExceeded(KaplanskyError):
    """An exhaustive enumeration would exceed its step budget."""

    kind = "budget-exceeded"

    def __init__(self, required: int, budget: int, what: str = "enumeration"):
        super().__init__(f"{what} needs {required} steps, budget is {budget}")
        self.required = required
        self.budget = budget


class SpecSyntaxError(KaplanskyError, ValueError):
    """Syntax error in a textual group spec, support spec or sentence."""

    kind = "syntax-error"

    def __init__(self, message: str, position: int, line: int = 1, column: int | None = None):
        self.position = position
        self.line = line
        self.column = position + 1 if column is None else column
        super().__init__(f"{message} (line {self.line}, column {self.column})")
