"""Orthogonal polynomials for the moment functional G(<<x>>_{r,m,n}) = a^n.

The moments are G(x^n) = Phi_n[a], because x^n = sum_k W[n,k] <<x>>_{r,m,k}.
``h_poly`` builds the candidate monic family in closed form, either as
printed (q-binomials in base q) or corrected (base q^m); the two agree when
m = 1.  Recurrence coefficients are recovered by exact coefficient matching
and set against ``paper_coeffs`` and ``corrected_coeffs``.  ``monic_op``
computes the true monic orthogonal polynomials from the moments alone.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .errors import DegenerateMoments, SingularSystem
from .hankel import determinant
from .poly import A, ONE, X, ZERO, SymPoly, as_poly, poly_prod, poly_sum
from .qcore import RatExpr, binom2, qbinomial, qint
from .sequences import (
    Params,
    _as_params,
    gen_factorial_normalized,
    moment_poly,
    phi_at_a,
    whitney_first,
)

MOMENTS = ("phi", "weighted")
FAMILIES = ("printed", "corrected")


def _neg_a_pow(k: int) -> SymPoly:
    return SymPoly.monomial((-1) ** k, a=k)


def _base(p: Params, family: str) -> int:
    if family == "printed":
        return 1
    if family == "corrected":
        return p.m
    raise ValueError(f"family must be one of {FAMILIES}, got {family!r}")


@lru_cache(maxsize=None)
def p_poly(n: int, base: int = 1) -> SymPoly:
    """p_n(x, a) = sum_k (-a)^k Q^C(k,2) [n,k]_Q x^(n-k) with Q = q^base.

    Equivalently prod_{j<n} (x - Q^j a).
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    return poly_sum(
        _neg_a_pow(k).shift_q(base * binom2(k)) * qbinomial(n, k).qscale(base)
        * SymPoly.monomial(1, x=n - k)
        for k in range(n + 1))


@lru_cache(maxsize=None)
def g_poly(p, n: int, family: str = "printed") -> SymPoly:
    """g_n = sum_k (-a)^k Q^C(k,2) [n,k]_Q <<x>>_{r,m,n-k}.

    ``family="printed"`` uses Q = q exactly as the construction is usually
    written; it is orthogonal for G only when m = 1.  ``family="corrected"``
    uses Q = q^m, which is orthogonal for every m.
    """
    p = _as_params(p)
    if n < 0:
        raise ValueError("n must be >= 0")
    t = _base(p, family)
    return poly_sum(
        _neg_a_pow(k).shift_q(t * binom2(k)) * qbinomial(n, k).qscale(t)
        * gen_factorial_normalized(p, n - k)
        for k in range(n + 1))


@lru_cache(maxsize=None)
def h_poly(p, n: int, family: str = "printed") -> SymPoly:
    """h_n = q^(m C(n,2) + rn) g_n, monic of degree n in x."""
    p = _as_params(p)
    return g_poly(p, n, family).shift_q(p.m * binom2(n) + p.r * n)


def moment(p, n: int, moments: str = "phi") -> SymPoly:
    if moments == "phi":
        return phi_at_a(p, n)
    if moments == "weighted":
        return moment_poly(p, n)
    raise ValueError(f"moments must be one of {MOMENTS}, got {moments!r}")


def functional_G(p, f: SymPoly, moments: str = "phi") -> SymPoly:
    """Apply G by monomial expansion, x^n -> moment n.

    ``moments="weighted"`` swaps in the q-weighted sequence instead of
    Phi_n[a]; it exists only to show that choice is not the one for which
    G(<<x>>_n) = a^n.
    """
    p = _as_params(p)
    return poly_sum(c * moment(p, n, moments) for n, c in enumerate(as_poly(f).x_coeffs()) if c)


def basis_convert(p, f, direction: str = "monomial->genfact"):
    """Change basis between {x^n} and {<<x>>_{r,m,k}}.

    monomial->genfact takes a SymPoly in x and returns the coefficient list
    [b_0, ..., b_d] with f = sum_k b_k <<x>>_k.  genfact->monomial takes such
    a list and returns the SymPoly.
    """
    p = _as_params(p)
    if direction == "monomial->genfact":
        coeffs = as_poly(f).x_coeffs()
        deg = len(coeffs) - 1
        out = []
        for k in range(deg + 1):
            out.append(poly_sum(c * whitney_first(p, n, k) for n, c in enumerate(coeffs) if c and n >= k))
        return out
    if direction == "genfact->monomial":
        return poly_sum(as_poly(b) * gen_factorial_normalized(p, k) for k, b in enumerate(f) if b)
    raise ValueError(f"unknown direction {direction!r}")


@dataclass(frozen=True, eq=False)
class RecurrenceCoeffs:
    n: int
    g_rec: RatExpr
    f_rec: RatExpr
    c_rec: RatExpr


def recover_recurrence(p, n: int, family: str = "printed") -> RecurrenceCoeffs:
    """Solve x h_n = g h_{n+1} + f h_n + c h_{n-1} by matching x-coefficients top-down.

    Raises SingularSystem when the lower coefficients leave a nonzero
    residual, i.e. when the family satisfies no three-term recurrence.
    """
    p = _as_params(p)
    if n < 1:
        raise ValueError("recurrence recovery needs n >= 1")
    lhs = (X * h_poly(p, n, family)).x_coeffs()
    hn1 = h_poly(p, n + 1, family).x_coeffs()
    hn = h_poly(p, n, family).x_coeffs()
    hm1 = h_poly(p, n - 1, family).x_coeffs()
    if len(hn1) != n + 2 or len(hn) != n + 1 or len(hm1) != n:
        raise SingularSystem("h polynomials are not degree graded")

    def c(seq, i):
        return RatExpr(seq[i]) if i < len(seq) else RatExpr(ZERO)

    if hn1[n + 1].is_zero or hn[n].is_zero or hm1[n - 1].is_zero:
        raise SingularSystem("zero leading coefficient")
    g = c(lhs, n + 1) / c(hn1, n + 1)
    f = (c(lhs, n) - g * c(hn1, n)) / c(hn, n)
    cc = (c(lhs, n - 1) - g * c(hn1, n - 1) - f * c(hn, n - 1)) / c(hm1, n - 1)

    for i in range(n - 1):
        resid = c(lhs, i) - g * c(hn1, i) - f * c(hn, i) - cc * c(hm1, i)
        if not resid.is_zero:
            raise SingularSystem(f"three-term recurrence fails at x^{i} for n={n}")
    return RecurrenceCoeffs(n, g, f, cc)


def recurrence_residual(p, n: int, g, f, c, family: str = "printed") -> RatExpr:
    """x h_n - (g h_{n+1} + f h_n + c h_{n-1}) with x kept as a variable."""
    p = _as_params(p)
    lhs = RatExpr(X * h_poly(p, n, family))
    rhs = (RatExpr._lift(g) * RatExpr(h_poly(p, n + 1, family))
           + RatExpr._lift(f) * RatExpr(h_poly(p, n, family))
           + RatExpr._lift(c) * RatExpr(h_poly(p, n - 1, family)))
    return lhs - rhs


def paper_coeffs(p, n: int) -> tuple[SymPoly, SymPoly, SymPoly]:
    """The printed g(n), f(n), c(n), transcribed literally."""
    p = _as_params(p)
    if n < 1:
        raise ValueError("printed coefficients are indexed from n = 1")
    m, r = p.m, p.r
    qmn_minus_1 = SymPoly.monomial(1, q=m * n) - ONE
    g = (2 + qmn_minus_1).shift_q(-m * n)
    f = (2 * A.shift_q(n + r)
         + qint(r)
         + qmn_minus_1.shift_q(r) * (A.shift_q(n) + A.shift_q(n - 1))
         + (qint(m) * qint(n, m)).shift_q(r))
    c = ((qmn_minus_1 * A * A).shift_q(r + 2 * n - 2)
         + (qint(m) * qint(n, m) * A).shift_q(r + n - 1)).shift_q(m * (n - 1) + r)
    return g, f, c


def corrected_coeffs(p, n: int) -> tuple[SymPoly, SymPoly, SymPoly]:
    """g(n), f(n), c(n) of the corrected family, derived in base Q = q^m.

    Same shape as the printed ones with q^n -> q^(mn) in the a-terms, and
    without the doubled q^r x p_n contribution that inflates g and f.
    """
    p = _as_params(p)
    if n < 1:
        raise ValueError("coefficients are indexed from n = 1")
    m, r = p.m, p.r
    qmn_minus_1 = SymPoly.monomial(1, q=m * n) - ONE
    f = (A.shift_q(r + m * n)
         + qint(r)
         + qmn_minus_1.shift_q(r) * (A.shift_q(m * n) + A.shift_q(m * (n - 1)))
         + (qint(m) * qint(n, m)).shift_q(r))
    c = ((qmn_minus_1 * A * A).shift_q(r + 2 * m * (n - 1))
         + (qint(m) * qint(n, m) * A).shift_q(r + m * (n - 1))).shift_q(m * (n - 1) + r)
    return ONE, f, c


def c_paper(p, i: int) -> SymPoly:
    return paper_coeffs(p, i)[2]


def norm_product(p, n: int, source: str = "paper", family: str = "printed") -> SymPoly:
    """prod_{i=1}^n c(i) with the printed ("paper") or recovered ("recovered") c."""
    p = _as_params(p)
    if source == "paper":
        return poly_prod(c_paper(p, i) for i in range(1, n + 1))
    if source == "recovered":
        return poly_prod(recover_recurrence(p, i, family).c_rec.to_poly() for i in range(1, n + 1))
    raise ValueError(f"source must be 'paper' or 'recovered', got {source!r}")


@dataclass(frozen=True, eq=False)
class MonicPoly:
    """Polynomial in x whose coefficients are RatExpr (lowest degree first)."""

    coeffs: tuple[RatExpr, ...]

    def at(self, x0) -> RatExpr:
        acc = RatExpr(ZERO)
        for c in reversed(self.coeffs):
            acc = acc * RatExpr(as_poly(x0)) + c
        return acc

    def to_poly(self) -> SymPoly:
        return poly_sum(c.to_poly() * SymPoly.monomial(1, x=k) for k, c in enumerate(self.coeffs))

    def __eq__(self, other) -> bool:
        if isinstance(other, SymPoly):
            other = MonicPoly(tuple(RatExpr(c) for c in other.x_coeffs()))
        if not isinstance(other, MonicPoly):
            return NotImplemented
        if len(self.coeffs) != len(other.coeffs):
            return False
        return all(u == v for u, v in zip(self.coeffs, other.coeffs))

    __hash__ = None


def monic_op(p, n: int, moments: Sequence[SymPoly] | str = "phi", algo: str = "both") -> MonicPoly:
    """Degree-n monic orthogonal polynomial from a moment sequence.

    The bordered Hankel determinant with last row (1, x, ..., x^n) divided by
    the order-n Hankel determinant; each x^k coefficient is a signed minor.
    """
    p = _as_params(p)
    if n < 0:
        raise ValueError("n must be >= 0")
    if isinstance(moments, str):
        mu = [moment(p, i, moments) for i in range(2 * n)]
    else:
        mu = [as_poly(v) for v in moments]
        if len(mu) < 2 * n:
            raise ValueError(f"need {2 * n} moments, got {len(mu)}")
    if n == 0:
        return MonicPoly((RatExpr(ONE),))
    delta = determinant([[mu[i + j] for j in range(n)] for i in range(n)], algo)
    if delta.is_zero:
        raise DegenerateMoments(f"order-{n} Hankel determinant vanishes")
    top = [[mu[i + j] for j in range(n + 1)] for i in range(n)]
    coeffs = []
    for k in range(n + 1):
        minor = [[row[j] for j in range(n + 1) if j != k] for row in top]
        sign = 1 if (n + k) % 2 == 0 else -1
        coeffs.append(RatExpr(determinant(minor, algo) * sign, delta))
    return MonicPoly(tuple(coeffs))
