"""
Exception hierarchy for the heisenberg app.

Every error raised by the library derives from HeisenbergError, which is a
ValueError so callers that only guard against bad input keep working.
"""

from typing import Optional


class HeisenbergError(ValueError):
    """Base class for all library errors."""


class UnsupportedModulusError(HeisenbergError):
    """The root-of-unity order is even or smaller than 3."""


class LimitDoesNotExistError(HeisenbergError):
    """The cyclotomic polynomial does not divide the numerator of a limit."""


class NotInvertibleError(HeisenbergError):
    """Inverse requested for zero or for a zero divisor."""


class SpecValidationError(HeisenbergError):
    """A matrix, algebra spec, preset, point or payload is malformed."""


class DomainError(HeisenbergError):
    """An operation was called outside its domain."""


class ModeMismatchError(HeisenbergError):
    """Elements of different coefficient modes or algebras were combined."""


class InconsistencyError(HeisenbergError):
    """An internal cross-check failed; signals a bug in the rewriting engine."""


class DegenerateBlockError(HeisenbergError):
    """A canonical block shares a factor with the root-of-unity order."""


class DimensionMismatchError(HeisenbergError):
    """Representation matrices do not fit the algebra they are checked against."""


class UnknownGeneratorError(HeisenbergError):
    """A generator name is not part of the chosen algebra."""


class ExpressionSyntaxError(HeisenbergError):
    """Expression text does not match the grammar."""

    def __init__(self, message: str, line: int, column: int, text: Optional[str] = None):
        super().__init__(f"{message} at line {line}, column {column}")
        self.message = message
        self.line = line
        self.column = column
        self.text = text
