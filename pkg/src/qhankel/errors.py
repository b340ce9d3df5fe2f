"""Exception hierarchy for qhankel."""


class QHankelError(Exception):
    pass


class ZeroSubstitutionIntoNegativePower(QHankelError, ZeroDivisionError):
    """Raised when q -> 0 is substituted into a term with a negative q exponent."""


class NotDivisible(QHankelError, ArithmeticError):
    """Raised by exact division when no quotient exists in the ring."""


class SingularSystem(QHankelError):
    pass


class DegenerateMoments(QHankelError):
    pass


class OrderTooLarge(QHankelError, ValueError):
    pass


class AlgorithmDisagreement(QHankelError):
    """The two determinant engines returned different values. Always a bug."""


class ParseError(QHankelError, ValueError):
    pass
