"""Exception hierarchy shared by all grcodes modules."""


class GRCodesError(Exception):
    """Base class for every error raised by this package."""


class NotAUnitError(GRCodesError):
    """Inversion or unit decomposition was attempted on a non-unit."""


class NonPrimitiveInputError(GRCodesError):
    """A polynomial that must be (basic) primitive is not."""


class OrderMismatchError(GRCodesError):
    """Cyclotomic values of different root orders were combined without coercion."""


class NotRationalError(GRCodesError):
    """A cyclotomic value expected to be a rational integer is not.

    This always signals a bug in a formula or its interpretation; the
    library never rounds its way past it.
    """


class NegativeCountError(GRCodesError):
    """A symbol-count formula produced a value outside [0, n]."""


class InvalidSubgroupError(GRCodesError):
    """Subgroup data is inconsistent (bad index divisor, dependent basis, ...)."""


class InvalidTowerError(GRCodesError):
    """A trace target is not below the element's ring."""


class IncompatibleTowerError(GRCodesError):
    """Attempted to embed a ring into one that does not extend it."""


class ScaleGuardError(GRCodesError):
    """Construction refused because exhaustive enumeration would be too large."""


class PreconditionViolatedError(GRCodesError):
    """A closed-form result was requested outside its hypotheses."""
