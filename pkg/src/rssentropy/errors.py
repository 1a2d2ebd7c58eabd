"""Exception types raised by the estimators, tests and drivers."""


class RssEntropyError(ValueError):
    """Base class for all package errors."""


class InvalidWindow(RssEntropyError):
    pass


class DegenerateSpacing(RssEntropyError):
    """A spacing window spans tied order statistics."""


class DegenerateBreakpoints(RssEntropyError):
    pass


class DegenerateVariance(RssEntropyError):
    pass


class InvalidScale(RssEntropyError):
    pass


class InsufficientData(RssEntropyError):
    pass


class InsufficientCycles(RssEntropyError):
    pass


class InsufficientSetSize(RssEntropyError):
    pass


class UnsupportedDistribution(RssEntropyError):
    pass


class KeyMismatch(RssEntropyError):
    pass


class ConfigError(RssEntropyError):
    """Malformed configuration or data file."""


# Errors caused by the data rather than by the caller's arguments.
DEGENERATE_ERRORS = (
    DegenerateSpacing,
    DegenerateBreakpoints,
    DegenerateVariance,
    InvalidScale,
)


class TooManyDegenerate(RssEntropyError):
    """More than 0.1% of Monte Carlo replications had to be redrawn."""


DEGENERATE_ERRORS = DEGENERATE_ERRORS + (TooManyDegenerate,)
