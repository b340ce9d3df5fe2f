"""(q,r)-Whitney triangles, (q,r)-Dowling numbers and the polynomials Phi_n.

All three Whitney forms are derived from the first-form triangle

    W[n,k] = q^(m(k-1)+r) W[n-1,k-1] + [mk+r]_q W[n-1,k],   W[0,0] = 1,

with W[n,k] = 0 outside 0 <= k <= n.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass
from functools import lru_cache

from .poly import A, ONE, X, ZERO, SymPoly, poly_sum
from .qcore import binom2, qderiv, qint

FORMS = ("first", "second", "third")


@dataclass(frozen=True, order=True)
class Params:
    m: int
    r: int

    def __post_init__(self):
        if not isinstance(self.m, int) or self.m < 1:
            raise ValueError(f"m must be a positive integer, got {self.m!r}")
        if not isinstance(self.r, int) or self.r < 0:
            raise ValueError(f"r must be a nonnegative integer, got {self.r!r}")


def _as_params(p) -> Params:
    return p if isinstance(p, Params) else Params(*p)


class WhitneyTable:
    """Growable memo of one Whitney triangle for fixed (m, r, form).

    Rows are appended by a single writer under a lock; rows already built
    are never mutated.
    """

    def __init__(self, params: Params, form: str = "first"):
        if form not in FORMS:
            raise ValueError(f"form must be one of {FORMS}, got {form!r}")
        self.params = params
        self.form = form
        self.rows: list[tuple[SymPoly, ...]] = [(ONE,)]
        self._lock = threading.Lock()

    def _extend(self, n: int) -> None:
        with self._lock:
            m, r = self.params.m, self.params.r
            if self.form != "first":
                first = _table(self.params, "first")
                first._extend(n)
                while len(self.rows) <= n:
                    i = len(self.rows)
                    self.rows.append(tuple(
                        _reweight(first.rows[i][k], k, m, r, self.form)
                        for k in range(i + 1)))
                return
            while len(self.rows) <= n:
                prev = self.rows[-1]
                i = len(prev)
                row = []
                for k in range(i + 1):
                    left = prev[k - 1].shift_q(m * (k - 1) + r) if k >= 1 else ZERO
                    right = prev[k] * qint(m * k + r) if k < i else ZERO
                    row.append(left + right)
                self.rows.append(tuple(row))

    def entry(self, n: int, k: int) -> SymPoly:
        if n < 0:
            raise ValueError("n must be >= 0")
        if k < 0 or k > n:
            return ZERO
        if n >= len(self.rows):
            self._extend(n)
        return self.rows[n][k]

    def row(self, n: int) -> tuple[SymPoly, ...]:
        if n >= len(self.rows):
            self._extend(n)
        return self.rows[n]


def _reweight(w: SymPoly, k: int, m: int, r: int, form: str) -> SymPoly:
    if form == "second":
        return w.shift_q(-k * r - m * binom2(k))
    return w.shift_q(-m * binom2(k))


@lru_cache(maxsize=None)
def _table(p: Params, form: str) -> WhitneyTable:
    return WhitneyTable(p, form)


def whitney_table(p, form: str = "first") -> WhitneyTable:
    return _table(_as_params(p), form)


def whitney_first(p, n: int, k: int) -> SymPoly:
    return _table(_as_params(p), "first").entry(n, k)


def whitney_second(p, n: int, k: int) -> SymPoly:
    return _table(_as_params(p), "second").entry(n, k)


def whitney_third(p, n: int, k: int) -> SymPoly:
    return _table(_as_params(p), "third").entry(n, k)


def whitney(p, n: int, k: int, form: str = "first") -> SymPoly:
    return whitney_table(p, form).entry(n, k)


@lru_cache(maxsize=None)
def _dowling(p: Params, n: int, form: str) -> SymPoly:
    return poly_sum(_table(p, form).row(n))


def dowling(p, n: int, form: str = "first") -> SymPoly:
    """Row sum of the chosen Whitney form."""
    if form not in FORMS:
        raise ValueError(f"form must be one of {FORMS}, got {form!r}")
    if n < 0:
        raise ValueError("n must be >= 0")
    return _dowling(_as_params(p), n, form)


def _weighted_row_sum(row, var: SymPoly) -> SymPoly:
    out = ZERO
    power = ONE
    for k, w in enumerate(row):
        if k:
            power = power * var
        out = out + w * power
    return out


@lru_cache(maxsize=None)
def _phi(p: Params, n: int, var: str) -> SymPoly:
    return _weighted_row_sum(_table(p, "first").row(n), X if var == "x" else A)


def phi_poly(p, n: int) -> SymPoly:
    """Phi_n[x] = sum_k W[n,k] x^k."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return _phi(_as_params(p), n, "x")


def phi_at_a(p, n: int) -> SymPoly:
    """Phi_n with x renamed a; the moment sequence of the functional G."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return _phi(_as_params(p), n, "a")


@lru_cache(maxsize=None)
def _moment(p: Params, n: int) -> SymPoly:
    row = _table(p, "first").row(n)
    return poly_sum(
        w.shift_q(p.r * k + p.m * binom2(k)) * SymPoly.monomial(1, a=k)
        for k, w in enumerate(row))


def moment_poly(p, n: int) -> SymPoly:
    """sum_k W[n,k] q^(rk + m C(k,2)) a^k, the q-weighted moment variant."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return _moment(_as_params(p), n)


@lru_cache(maxsize=None)
def gen_factorial(p, k: int) -> SymPoly:
    """<x>_{r,m,k} = prod_{j<k} (x - [r+jm]_q)."""
    p = _as_params(p)
    if k < 0:
        raise ValueError("k must be >= 0")
    if k == 0:
        return ONE
    return gen_factorial(p, k - 1) * (X - qint(p.r + (k - 1) * p.m))


@lru_cache(maxsize=None)
def gen_factorial_normalized(p, k: int) -> SymPoly:
    """<<x>>_{r,m,k} = q^(-rk - m C(k,2)) <x>_{r,m,k}."""
    p = _as_params(p)
    return gen_factorial(p, k).shift_q(-p.r * k - p.m * binom2(k))


def phi_operator_apply(p, f: SymPoly) -> SymPoly:
    """q^r x f + (q^m - 1) q^r x^2 D f + [r]_q f + q^r [m]_q x D f, with D = D_{q^m}."""
    p = _as_params(p)
    m, r = p.m, p.r
    df = qderiv(f, m)
    qm_minus_1 = SymPoly.monomial(1, q=m) - ONE
    return ((X * f).shift_q(r)
            + (qm_minus_1 * X * X * df).shift_q(r)
            + qint(r) * f
            + (qint(m) * X * df).shift_q(r))


@lru_cache(maxsize=None)
def stirling2_oracle(n: int, k: int) -> int:
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return 1 if k == 0 else 0
    if k <= 0 or k > n:
        return 0
    return stirling2_oracle(n - 1, k - 1) + k * stirling2_oracle(n - 1, k)


def bell_oracle(n: int) -> int:
    return sum(stirling2_oracle(n, k) for k in range(n + 1))
