"""Exception hierarchy shared across the library and the CLI.

The CLI maps these onto process exit codes: hypothesis violations exit
with 1, parse/job errors with 2, exceeded computation bounds with 3.
"""


class FormdepthError(Exception):
    """Base class for all library errors."""


class RingMismatchError(FormdepthError):
    """Operands live in different rings."""


class HomogeneityError(FormdepthError):
    """A homogeneous input was required but not supplied."""


class HypothesisError(FormdepthError):
    """A theorem hypothesis (characteristic guard, coprimality,
    smoothness, genericity, ...) is violated by the input."""


class CharacteristicGuardError(HypothesisError):
    """The field characteristic divides a critical integer."""


class ParseError(FormdepthError):
    """Lexical or syntactic error in a polynomial expression."""

    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class JobError(FormdepthError):
    """Malformed job specification."""


class BoundExceededError(FormdepthError):
    """A search bound was exhausted without reaching a verdict."""


class TableViolationError(FormdepthError):
    """A computed invariant contradicts the expected classification row."""
