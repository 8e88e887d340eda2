"""Exception types raised across the package."""


class GrassorthError(Exception):
    """Base class for all package errors."""


class DimensionMismatch(GrassorthError, ValueError):
    pass


class NotHermitian(GrassorthError, ValueError):
    pass


class RankDeficient(GrassorthError, ValueError):
    pass


class NotInChart(GrassorthError, ValueError):
    pass


class ZeroVector(GrassorthError, ValueError):
    pass


class NotNull(GrassorthError, ValueError):
    pass


class NotExactMode(GrassorthError, TypeError):
    pass


class EmptyIntersection(GrassorthError):
    pass


class DegenerateComplement(GrassorthError):
    pass


class SamplerExhausted(GrassorthError):
    pass


class MapFormatError(GrassorthError, ValueError):
    """Malformed map file or scalar encoding."""


class VerificationFailed(GrassorthError):
    """A structural property asserted by the analyzer did not hold on samples."""
