"""Exception types raised across the package."""


class NihoPermError(Exception):
    """Base class for all errors raised by nihoperm."""


class ReduciblePolynomial(NihoPermError, ValueError):
    pass


class ContextMismatch(NihoPermError, TypeError):
    """Operands belong to different fields (or a polynomial and an element disagree)."""


class DivisionByZero(NihoPermError, ZeroDivisionError):
    pass


class DegreeMismatch(NihoPermError, ValueError):
    pass


class NotInvertible(NihoPermError, ArithmeticError):
    """A modular inverse does not exist, e.g. 11 modulo 2^m + 1 when 11 divides it."""


class DenominatorVanished(NihoPermError, ArithmeticError):
    pass


class NotOnCircle(NihoPermError, ValueError):
    pass


class ZeroCoefficient(NihoPermError, ValueError):
    pass


class RelationViolated(NihoPermError, ValueError):
    pass


class FieldTooSmall(NihoPermError, ValueError):
    pass


class DomainTooLarge(NihoPermError, ValueError):
    pass


class BadFactorization(NihoPermError, ValueError):
    pass
