"""Exception hierarchy shared by all modules."""


class StripBoundsError(Exception):
    """Base class for every error raised by this package."""


class SeriesError(StripBoundsError, ValueError):
    pass


class NonFiniteCoefficient(SeriesError):
    pass


class DivisionByZeroConstantTerm(SeriesError, ZeroDivisionError):
    pass


class NonVanishingInnerConstant(SeriesError):
    pass


class NonZeroConstantTerm(SeriesError):
    pass


class NonUnitConstantTerm(SeriesError):
    pass


class RadiusExceeded(StripBoundsError, ValueError):
    pass


class DomainError(StripBoundsError, ValueError):
    """Parameters fall outside the region where a formula is defined."""


class IndexOutOfOrder(StripBoundsError, IndexError):
    pass


class DenominatorVanishes(StripBoundsError, ZeroDivisionError):
    pass


class NormalizationError(StripBoundsError, ValueError):
    pass


class ConfigError(StripBoundsError, ValueError):
    pass
