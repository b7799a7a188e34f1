"""Exception types raised across the package."""


class CharsumError(Exception):
    """Base class for every error raised by charsum."""


# fields
class NotPrime(CharsumError, ValueError):
    pass


class ReducibleModulus(CharsumError, ValueError):
    pass


class DivisionByZero(CharsumError, ZeroDivisionError):
    pass


class FieldMismatch(CharsumError, TypeError):
    pass


class DlogOfZero(CharsumError, ValueError):
    pass


# cyclotomic ring
class OrderMismatch(CharsumError, TypeError):
    pass


class DenominatorNotInvertible(CharsumError, ValueError):
    pass


class NotCoprime(CharsumError, ValueError):
    pass


class InexactDivision(CharsumError, ArithmeticError):
    """An exact division left a remainder; always an implementation bug."""


# jacobi / subspaces
class ZeroCoefficient(CharsumError, ValueError):
    pass


class InconsistentSystem(CharsumError, ValueError):
    pass


# covers and L-series
class CoverError(CharsumError, ValueError):
    pass


class NDoesNotDivideQMinus1(CoverError):
    pass


class BranchPointsNotDistinct(CoverError):
    pass


class ExponentOutOfRange(CoverError):
    pass


class UnramifiedAtInfinity(CoverError):
    pass


class DegenerateCharacter(CoverError):
    pass


class NotTotallyRamified(CoverError):
    pass


class LambdaZero(CharsumError, ValueError):
    pass


class PreconditionFailed(CharsumError, ValueError):
    pass
