"""Exception types raised across the package."""


class QchanError(Exception):
    """Base class for all package errors."""


class NotHermitian(QchanError, ValueError):
    pass


class NoConvergence(QchanError, RuntimeError):
    pass


class DimensionMismatch(QchanError, ValueError):
    pass


class NegativeSpectrum(QchanError, ValueError):
    pass


class BadExponent(QchanError, ValueError):
    pass


class OutOfRange(QchanError, ValueError):
    pass


class NotUnitary(QchanError, ValueError):
    pass


class WeightsInvalid(QchanError, ValueError):
    pass


class BadPartition(QchanError, ValueError):
    pass


class NotAState(QchanError, ValueError):
    pass


class SupportViolation(QchanError, ValueError):
    """The second argument of a relative entropy misses part of the first's support."""


class LengthMismatch(QchanError, ValueError):
    pass


class NotStochastic(QchanError, ValueError):
    pass


class BadRecipe(QchanError, ValueError):
    pass


class ConfigInvalid(QchanError, ValueError):
    pass


class RangeInvalid(ConfigInvalid):
    pass


class IoFailure(QchanError, OSError):
    pass
