"""Exception hierarchy shared by all cyops modules."""


class CyopsError(Exception):
    """Base class for every error raised by cyops."""


# series kernels
class NotAUnit(CyopsError, ZeroDivisionError):
    pass


class CompositionAtNonzeroPoint(CyopsError, ValueError):
    pass


class NotReversible(CyopsError, ValueError):
    pass


class NonUnitConstantTerm(CyopsError, ValueError):
    pass


class NoRationalFit(CyopsError):
    pass


# operators
class IrregularSingularity(CyopsError):
    pass


class NonIntegralResidue(CyopsError):
    pass


class DegenerateSymmetricPower(CyopsError):
    pass


class NoOperatorInBounds(CyopsError):
    pass


# local solutions and normal forms
class NotMUM(CyopsError):
    pass


class IrrationalExponents(CyopsError):
    pass


class OrderTooSmall(CyopsError, ValueError):
    pass


class NotSelfDual(CyopsError):
    pass


# checker
class NotSymPower(CyopsError):
    pass


class CannotNormalize(CyopsError):
    pass


class ParseError(CyopsError, ValueError):
    """Raised by the operator parser; carries the offending position."""

    def __init__(self, message, position, expected=()):
        self.position = position
        self.expected = tuple(expected)
        detail = f"{message} at position {position}"
        if self.expected:
            detail += f" (expected one of: {', '.join(self.expected)})"
        super().__init__(detail)
