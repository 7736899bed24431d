"""Exception hierarchy shared by all modules."""


class DivCodesError(Exception):
    """Base class for every error raised by this package."""


class NotPrime(DivCodesError, ValueError):
    pass


class FieldTooLarge(DivCodesError, ValueError):
    pass


class DivisionByZero(DivCodesError, ZeroDivisionError):
    pass


class ZeroVector(DivCodesError, ValueError):
    pass


class FieldMismatch(DivCodesError, ValueError):
    pass


class LengthMismatch(DivCodesError, ValueError):
    pass


class BadPositions(DivCodesError, ValueError):
    pass


class NotACodeword(DivCodesError, ValueError):
    pass


class EnumerationTooLarge(DivCodesError):
    """Raised when an exact enumeration would exceed the configured cap."""


class NonIntegerResult(DivCodesError, ValueError):
    """A MacWilliams transform did not produce integers, so the input was not a weight distribution."""


class NotBinary(DivCodesError, ValueError):
    pass


class NotFullLength(DivCodesError, ValueError):
    pass


class BadParameters(DivCodesError, ValueError):
    pass


class NotInCatalog(DivCodesError):
    """No catalog family matches; unreachable for inputs satisfying the classification hypothesis."""


class NotRepetition(DivCodesError, ValueError):
    pass


class LemmaViolation(DivCodesError):
    """Two weight-Δ words intersect in a way impossible inside a Δ-divisible code."""


class InstanceTooLarge(DivCodesError, ValueError):
    pass


class NotDivisible(DivCodesError, ValueError):
    pass


class ParseError(DivCodesError, ValueError):
    pass
