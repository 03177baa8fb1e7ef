"""Exception hierarchy shared by all weylkit modules.

Exit-code mapping used by the CLI:
  UsageError (and subclasses)  -> 2
  ResourceGuardExceeded        -> 3
  verification failures are reported through verdict objects, not raised.
"""

from __future__ import annotations


class WeylKitError(Exception):
    """Base class for all weylkit errors."""


class UsageError(WeylKitError):
    """Invalid argument, malformed input, or violated precondition."""


class ExprSyntaxError(UsageError):
    """Operator expression text does not match the grammar.

    Carries the byte offset of the failure and the set of token kinds that
    would have been accepted there.
    """

    def __init__(self, offset: int, expected: set[str], found: str):
        self.offset = offset
        self.expected = frozenset(expected)
        self.found = found
        exp = ", ".join(sorted(expected))
        super().__init__(f"syntax error at offset {offset}: expected {exp}, found {found}")


class DecodeError(UsageError):
    """Malformed operator/curve document.

    ``term_index`` names the offending term when the problem is inside the
    terms list (None for structural problems).
    """

    def __init__(self, message: str, term_index: int | None = None):
        self.term_index = term_index
        if term_index is not None:
            message = f"term {term_index}: {message}"
        super().__init__(message)


class InvalidGeneratorError(UsageError):
    """Automorphism generator descriptor violates its validity condition."""


class InvalidParameterError(UsageError):
    """Catalog constructor called with an out-of-range parameter."""


class NotCommutingError(WeylKitError):
    """A commutation precondition failed; carries a diagnostic residual."""


class NoRelationError(WeylKitError):
    """No monic quintic operator relation exists for the given pair."""


class ResourceGuardExceeded(WeylKitError):
    """The per-operation monomial budget was exhausted."""
