"""Exact q-analogue r-Whitney/r-Dowling sequences and their Hankel determinants."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    AlgorithmDisagreement,
    DegenerateMoments,
    NotDivisible,
    OrderTooLarge,
    ParseError,
    QHankelError,
    SingularSystem,
    ZeroSubstitutionIntoNegativePower,
)
from .poly import A, ONE, Q, X, ZERO, SymPoly, exact_divide, parse, substitute  # noqa: E402
from .qcore import RatExpr, qbinomial, qderiv, qfactorial, qint, qpochhammer  # noqa: E402
from .sequences import Params  # noqa: E402
