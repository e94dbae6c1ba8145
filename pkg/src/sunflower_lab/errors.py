"""Shared exception types."""


class SunflowerLabError(Exception):
    """Base class for all package errors."""


class ArityError(SunflowerLabError):
    """Operands live in rings with different variable counts."""


class ZeroPolynomialError(SunflowerLabError):
    """The zero polynomial has no leading monomial."""


class InvalidWitnessError(SunflowerLabError):
    """A sunflower witness is malformed (duplicates, too few sets)."""


class DuplicatePointError(SunflowerLabError):
    """A finite point set contains a repeated point."""


class NotZeroDimensionalError(SunflowerLabError):
    """The ideal has infinitely many standard monomials."""


class BallotRangeError(SunflowerLabError):
    """Ballot enumeration requested for j > n/2, where the count claim is unsupported."""


class DomainError(SunflowerLabError):
    """A point is outside a decomposition's domain, or a subdomain is not a subset."""


class PigeonholeViolationError(SunflowerLabError):
    """A monomial has all three block degrees above the threshold."""


class CapExceededError(SunflowerLabError):
    """A configured resource cap was hit; message names the cap to raise."""

    def __init__(self, message, flag=None):
        super().__init__(message if flag is None else f"{message} (raise {flag})")
        self.flag = flag
