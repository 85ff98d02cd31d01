"""Exception types shared across the package."""

from __future__ import annotations


class QftAlgError(Exception):
    """Base class for all qftalg errors."""


class MissingSymbol(QftAlgError):
    """A polynomial evaluation was asked for a symbol with no assigned value."""

    def __init__(self, symbol):
        self.symbol = symbol
        super().__init__(f"no value assigned for symbol {symbol}")


class NotInKernel(QftAlgError):
    """An operation defined only on the counit kernel received an element
    with nonzero counit (strict mode)."""

    def __init__(self, counit_value):
        self.counit_value = counit_value
        super().__init__(
            f"element is not in the counit kernel (counit = {counit_value}); "
            "subtract its scalar part first or use strict=False"
        )


class ModeError(QftAlgError):
    """A chronological-only operation was requested in operator mode."""


class IdentityViolation(QftAlgError):
    """An identity that must hold by construction failed; carries both sides.

    Raised by the self-checking expansion operations.  Seeing this exception
    means an implementation bug, not a bad input.
    """

    def __init__(self, lhs, rhs, message="identity violated"):
        self.lhs = lhs
        self.rhs = rhs
        self.difference = lhs - rhs
        super().__init__(f"{message}: lhs - rhs = {self.difference}")


class UnsupportedFormat(QftAlgError):
    """An export was requested in an unknown output format."""


class ExprSyntaxError(QftAlgError):
    """Surface-syntax parse failure, with byte offset and expected tokens."""

    def __init__(self, message, offset, expected=()):
        self.offset = offset
        self.expected = tuple(expected)
        hint = f" (expected {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{message} at offset {offset}{hint}")


class PowerError(QftAlgError):
    """A field power outside the allowed range (negative exponent)."""

    def __init__(self, power, offset=None):
        self.power = power
        self.offset = offset
        where = f" at offset {offset}" if offset is not None else ""
        super().__init__(f"field power must be >= 0, got {power}{where}")
