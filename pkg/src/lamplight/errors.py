"""Exception hierarchy shared by all lamplight modules."""


class LamplightError(ValueError):
    """Base class for every error raised by this package."""


class AlphabetMismatchError(LamplightError):
    """Two words, series or machines over different moduli were combined."""


class ShapeMismatchError(LamplightError):
    """Truncated series of different length or modulus were combined."""


class InversionError(LamplightError):
    """A machine with a non-bijective output row cannot be inverted."""


class NotSequentialError(LamplightError):
    """A word function is not length preserving or not prefix monotone."""


class NotInvertibleError(LamplightError):
    """A series whose constant term is not a unit was inverted."""


class UnsupportedSeriesError(LamplightError):
    """An operation restricted to 1/(1 - X) received another series."""


class UnsupportedModulusError(LamplightError):
    """An operation restricted to a particular modulus received another."""


class ParseError(LamplightError):
    """Malformed text form of a word, series, machine or group element."""
