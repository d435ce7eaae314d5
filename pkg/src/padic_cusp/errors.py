"""Exception hierarchy shared by every module.

The CLI maps any ``PadicCuspError`` to exit code 1 and prints the class name.
"""


class PadicCuspError(Exception):
    """Base class for computational errors."""


class InsufficientPrecision(PadicCuspError):
    pass


class PrecisionTooLow(InsufficientPrecision):
    pass


class NegativeValuation(PadicCuspError):
    pass


class NotAUnit(PadicCuspError):
    pass


class UnsupportedType(PadicCuspError):
    pass


class DimensionMismatch(PadicCuspError):
    pass


class UnsupportedTorus(PadicCuspError):
    pass


class QTooLarge(PadicCuspError):
    pass


class NotASubgroup(PadicCuspError):
    pass


class NotIrreducible(PadicCuspError):
    pass


class UnsupportedGroup(PadicCuspError):
    pass


class DegenerateForm(PadicCuspError):
    pass


class IntertwinerNotFound(PadicCuspError):
    pass


class GE0Failed(PadicCuspError):
    pass


class DepthMismatch(PadicCuspError):
    pass


class UnsupportedDescriptor(PadicCuspError):
    pass


class DecompositionUnavailable(PadicCuspError):
    pass


class IncomparableData(PadicCuspError):
    pass


class NoFactorization(PadicCuspError):
    pass


class NotCompactModCenter(PadicCuspError):
    pass


class NotRegular(PadicCuspError):
    pass


class MissingOrbitData(PadicCuspError):
    pass


class NotTopSemisimple(PadicCuspError):
    pass


class ConfigError(PadicCuspError):
    pass
