"""Exception hierarchy.

Every error raised by the library derives from :class:`RiordanError`, so the
CLI can map the whole family onto exit code 2.
"""


class RiordanError(Exception):
    """Base class for all library errors."""


class ParseError(RiordanError, ValueError):
    """Malformed ring spec, element, series, pair or word."""


class InvalidModulus(RiordanError, ValueError):
    pass


class NonMonicModulus(RiordanError, ValueError):
    pass


class WrongRing(RiordanError, ValueError):
    """A symbol was used in a ring that has no such generator."""


class RingMismatch(RiordanError, TypeError):
    pass


class NotUnit(RiordanError, ValueError):
    """An element required to be invertible is not a unit."""


class InfiniteRing(RiordanError, ValueError):
    pass


class UnsupportedRing(RiordanError, ValueError):
    pass


class PrecisionMismatch(RiordanError, ValueError):
    pass


class PrecisionTooLow(RiordanError, ValueError):
    pass


class InnerNotVanishing(RiordanError, ValueError):
    """Substitution into a series whose constant term is not zero."""


class NotVanishing(RiordanError, ValueError):
    pass


class NotOne(RiordanError, ValueError):
    pass


class LevelMismatch(RiordanError, ValueError):
    pass


class NotRiordan(RiordanError, ValueError):
    """A matrix that is not the truncation of any Riordan array."""


class CapExceeded(RiordanError, RuntimeError):
    pass


class NoFaithfulLevel(RiordanError, RuntimeError):
    pass


class UnboundName(RiordanError, KeyError):
    pass


class NotInvolution(RiordanError, ValueError):
    pass


class PreconditionViolated(RiordanError, ValueError):
    pass


class UnknownScenario(RiordanError, KeyError):
    pass
