"""q-primitives and rational expressions on top of :mod:`qhankel.poly`.

``[n]_q`` is taken to be ``1 + q + ... + q^(n-1)``; every identity in the
test suite exercises that convention.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb

from .errors import NotDivisible
from .poly import (
    ONE,
    Q,
    X,
    ZERO,
    SymPoly,
    as_poly,
    exact_divide,
    parse,
    poly_prod,
    qpow,
    substitute,
)

__all__ = [
    "SymPoly", "RatExpr", "ONE", "ZERO", "Q", "X",
    "exact_divide", "substitute", "parse", "qpow",
    "qint", "qfactorial", "qbinomial", "qpochhammer", "qderiv",
    "binom2", "binom3",
]


def binom2(n: int) -> int:
    return comb(n, 2) if n >= 2 else 0


def binom3(n: int) -> int:
    return comb(n, 3) if n >= 3 else 0


@lru_cache(maxsize=None)
def qint(n: int, base: int = 1) -> SymPoly:
    """[n]_{q^base} = sum_{i<n} q^(base*i)."""
    if n < 0:
        raise ValueError("qint needs n >= 0")
    if base < 1:
        raise ValueError("qint needs base >= 1")
    return SymPoly({(base * i, 0, 0): 1 for i in range(n)})


@lru_cache(maxsize=None)
def qfactorial(n: int, base: int = 1) -> SymPoly:
    if n < 0:
        raise ValueError("qfactorial needs n >= 0")
    if n == 0:
        return ONE
    return qfactorial(n - 1, base) * qint(n, base)


@lru_cache(maxsize=None)
def qbinomial(n: int, k: int) -> SymPoly:
    """Gaussian binomial by the q-Pascal rule [n,k] = [n-1,k-1] + q^k [n-1,k]."""
    if n < 0:
        raise ValueError("qbinomial needs n >= 0")
    if k < 0 or k > n:
        return ZERO
    if k == 0 or k == n:
        return ONE
    return qbinomial(n - 1, k - 1) + qbinomial(n - 1, k).shift_q(k)


def qpochhammer(z, i: int) -> SymPoly:
    """(z; q)_i = prod_{j<i} (1 - q^j z)."""
    if i < 0:
        raise ValueError("qpochhammer needs i >= 0")
    z = as_poly(z)
    return poly_prod(ONE - z.shift_q(j) for j in range(i))


def qderiv(f: SymPoly, base: int = 1) -> SymPoly:
    """Jackson derivative in x with respect to q^base: x^k -> [k]_{q^base} x^(k-1)."""
    coeffs = f.x_coeffs()
    xs = [ONE]
    out = ZERO
    for k in range(1, len(coeffs)):
        if len(xs) < k:
            xs.append(xs[-1] * X)
        if coeffs[k]:
            out = out + coeffs[k] * qint(k, base) * xs[k - 1]
    return out


class RatExpr:
    """Quotient num/den of two SymPoly values.

    Normal form: when den divides num the quotient is stored over 1.
    Otherwise den is shifted so its lowest q exponent is 0 and scaled so the
    last term in canonical display order has coefficient 1.
    Equality is by cross multiplication, so no polynomial gcd is needed.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=ONE):
        num, den = as_poly(num), as_poly(den)
        if den.is_zero:
            raise ZeroDivisionError("RatExpr with zero denominator")
        if den != ONE:
            try:
                num, den = exact_divide(num, den), ONE
            except NotDivisible:
                shift = -den.min_degree("q")
                num, den = num.shift_q(shift), den.shift_q(shift)
                lead = den.items()[-1][1]
                if lead != 1:
                    inv = Fraction(1) / lead
                    num, den = num * inv, den * inv
        self.num = num
        self.den = den

    @property
    def is_poly(self) -> bool:
        return self.den == ONE

    def to_poly(self) -> SymPoly:
        if not self.is_poly:
            raise NotDivisible(f"{self} is not a polynomial")
        return self.num

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @staticmethod
    def _lift(v) -> "RatExpr":
        return v if isinstance(v, RatExpr) else RatExpr(v)

    def __add__(self, other) -> "RatExpr":
        o = self._lift(other)
        if self.den == o.den:
            return RatExpr(self.num + o.num, self.den)
        return RatExpr(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> "RatExpr":
        return RatExpr(-self.num, self.den)

    def __sub__(self, other) -> "RatExpr":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "RatExpr":
        return self._lift(other) - self

    def __mul__(self, other) -> "RatExpr":
        o = self._lift(other)
        return RatExpr(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RatExpr":
        o = self._lift(other)
        if o.num.is_zero:
            raise ZeroDivisionError("division by zero RatExpr")
        return RatExpr(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other) -> "RatExpr":
        return self._lift(other) / self

    def __eq__(self, other) -> bool:
        if isinstance(other, (SymPoly, int, Fraction)):
            other = RatExpr(other)
        if not isinstance(other, RatExpr):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    __hash__ = None

    def subs(self, **bindings) -> "RatExpr":
        return RatExpr(self.num.subs(**bindings), self.den.subs(**bindings))

    def __str__(self) -> str:
        if self.is_poly:
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    def __repr__(self) -> str:
        return f"RatExpr({self})"
