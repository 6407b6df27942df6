"""Exception hierarchy shared by all tsring modules."""


class TsringError(Exception):
    """Base class for all errors raised by this package."""


class NotPrime(TsringError):
    """A value that must be prime is not."""


class BadOrder(TsringError):
    """Requested subgroup order does not divide p - 1."""


class TwoBlocked(TsringError):
    """p = 2 admits no nontrivial odd-order automorphism subgroup."""


class BadLevel(TsringError):
    """Subgroup level outside the valid range."""


class ParamsMismatch(TsringError):
    """Operands belong to models with different parameters."""


class ScalarMismatch(TsringError):
    """Operands have coefficients in different scalar rings."""


class NotInvertible(TsringError):
    """Element or matrix is not invertible over the requested ring."""


class NotUnit(TsringError):
    """A ring element required to be a unit is not one."""


class ShapeMismatch(TsringError):
    """Matrix shapes are incompatible with the requested operation."""


class BadGaloisIndex(TsringError):
    """Galois automorphism index is not coprime to the conductor."""


class CharacterIllDefined(TsringError):
    """Two connecting elements assign different character values."""


class UnrecognizedShape(TsringError):
    """A subgroup met during oracle evaluation fits none of the known shapes."""


class CharIsP(TsringError):
    """Coefficient field has the blocked characteristic p."""


class ScanTooLarge(TsringError):
    """Central idempotent scan would exceed the configured bound."""


class TheoremViolation(TsringError):
    """A mechanically checked identity failed; carries both sides."""
