"""Exception taxonomy.

Every precondition violation raises a named subclass of WittKitError so
callers (and the CLI) can distinguish bad input from internal failure.
"""


class WittKitError(RuntimeError):
    pass


# ring / involution construction
class CharacteristicTwo(WittKitError):
    pass


class NotAHomomorphism(WittKitError):
    pass


class NotInvolutive(WittKitError):
    pass


class DomainMismatch(WittKitError):
    pass


class NotAUnit(WittKitError):
    pass


class RingMismatch(WittKitError):
    pass


# modules, coefficients, forms
class NotStrongDuality(WittKitError):
    pass


class NotSesquilinear(WittKitError):
    pass


class NotEpsilonSymmetric(WittKitError):
    pass


class Degenerate(WittKitError):
    pass


class FormMismatch(WittKitError):
    """Orthogonal sum of forms over different rings/coefficients/signs."""


class CoefficientMismatch(WittKitError):
    pass


class NotACoefficientIso(WittKitError):
    pass


class IncompatibleTwistData(WittKitError):
    pass


class EnumerationBoundExceeded(WittKitError):
    pass


# maps between rings with involution
class NotEquivariant(WittKitError):
    pass


class NotFinite(WittKitError):
    pass


# field-level invariants
class NotDiagonalizable(WittKitError):
    pass


class EntryNotRational(WittKitError):
    pass


class UnsupportedField(WittKitError):
    pass


# koszul / regular sequences
class ImproperIdeal(WittKitError):
    pass


class IdealNotInvariant(WittKitError):
    pass


# devissage preconditions
class NotGorenstein(WittKitError):
    pass


class UnstableBound(WittKitError):
    """A comparison was requested with stability required, but raising the
    length bound by one changed a Witt presentation."""


class MaxIdealNotInvariant(WittKitError):
    pass


class NotGorensteinQuotient(WittKitError):
    pass


class ParseError(WittKitError):
    """Descriptor syntax error; carries 1-based line and column."""

    def __init__(self, message, line, col):
        super().__init__(f"{message} (line {line}, column {col})")
        self.line = line
        self.col = col


class EngineError(WittKitError):
    """Internal consistency failure (e.g. a form not matching any
    enumerated class).  Never expected on valid input; raised loudly
    instead of returning a wrong answer."""
