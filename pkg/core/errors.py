"""Exceptions raised by the numerical core.

Shape problems in the value types (weights that do not sum to one, alphabets
that disagree inside an EngineSpec, ...) are reported by pydantic as
``ValidationError``. Everything below is a numerical-domain failure and
deliberately does NOT subclass ``ValueError``, so that raising one inside a
pydantic validator propagates unchanged instead of being wrapped.
"""
import math


class SzilardError(Exception):
    """Base class for every domain error of the engine toolkit"""


class DimensionMismatchError(SzilardError):
    """Two distributions live on alphabets of different sizes"""


class SupportMismatchError(SzilardError):
    """p(x) > 0 where q(x) = 0 for a quantity that needs support(p) ⊆ support(q)"""


class DegenerateDivergenceError(SzilardError):
    """The defining sum of a divergence vanishes or blows up.

    The flagged limit is kept on ``value`` (usually ``+inf``) so callers can
    decide whether an infinite answer is acceptable.
    """

    def __init__(self, message: str, value: float = math.inf):
        super().__init__(message)
        self.value = value


class ZeroStrategyWeightError(SzilardError):
    """A strategy (or a distribution turned into energy levels) has a zero weight"""


class DomainError(SzilardError):
    """An argument lies outside the domain of the operation (e.g. r = -1)"""


class UnsupportedAlphabetError(SzilardError):
    """The brute-force oracles only cover alphabets of size 2 and 3"""


class TooLargeError(SzilardError):
    """A type enumeration would exceed the configured limit"""


class NoFeasibleTypeError(SzilardError):
    """No type clears the requested success probability"""
