"""Error types shared across the library and the CLI exit-code mapping."""


class DiffAlgError(Exception):
    """Base class for all library errors."""


class ParseError(DiffAlgError):
    """Syntax or semantic error while parsing text input.

    Carries the character position of the offending token when known.
    """

    def __init__(self, message, pos=None):
        if pos is not None:
            message = "%s (at position %d)" % (message, pos)
        super().__init__(message)
        self.pos = pos


class ContextError(DiffAlgError):
    """Operands built over incompatible contexts, or variables out of range."""


class ResourceBudgetError(DiffAlgError):
    """A computation would exceed the configured resource budget.

    Raised instead of silently truncating big-integer or coordinate data.
    """


class FileFormatError(ParseError):
    """Malformed ideal/kernel file."""
