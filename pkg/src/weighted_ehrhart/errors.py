"""Exception types raised by the library.

All of them derive from ValueError so callers that only care about
"bad input" can catch a single class.
"""


class NotInvertible(ValueError):
    """Raised when a modular or ring inverse does not exist."""


class InvalidArgs(ValueError):
    """Raised when arguments violate a coprimality or sign precondition."""


class InvalidWeights(InvalidArgs):
    """Raised for weight vectors that are not pairwise coprime positive integers."""


class InvalidType(ValueError):
    """Raised for a cyclic quotient type (d; a, b) with gcd(d, a, b) != 1."""


class NotNormalized(InvalidType):
    pass


class SmoothPoint(InvalidType):
    pass


class NegativeDilationWarning(UserWarning):
    """Emitted when a lattice-point count is requested at a negative dilation."""
