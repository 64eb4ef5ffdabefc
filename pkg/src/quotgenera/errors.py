"""Exception types shared across the package."""

from __future__ import annotations


class QuotError(Exception):
    """Base class for all package errors."""


class NotInvertible(QuotError, ZeroDivisionError):
    pass


class VariableMismatch(QuotError, ValueError):
    pass


class ExpOfUnit(QuotError, ValueError):
    pass


class ExponentOutOfRange(QuotError, IndexError):
    pass


class NotGaloisInvariant(QuotError, ArithmeticError):
    pass


class NoSolution(QuotError, ArithmeticError):
    pass


class PadeMismatch(QuotError, ArithmeticError):
    pass


class PoleAtOne(QuotError, ZeroDivisionError):
    """The z -> 1 limit of an equivariant coefficient does not exist."""


class InvalidSpec(QuotError, ValueError):
    pass


class UnsupportedGeometry(QuotError, ValueError):
    pass


class NonrepresentableClass(QuotError, ValueError):
    pass


class OddHalfPower(QuotError, ArithmeticError):
    """An odd power of u = sqrt(y) survived where only powers of y are allowed."""


class FractionalPowerResidue(QuotError, ArithmeticError):
    """A fractional power of q survived a product that should cancel it."""
