"""Sparse Laurent polynomials in q with ordinary variables a and x.

Every value in the package is a :class:`SymPoly`: a finite map from exponent
triples ``(e_q, e_a, e_x)`` to exact rationals.  Only ``q`` may carry a
negative exponent.  Coefficients are stored as ``int`` whenever they are
integral and as :class:`fractions.Fraction` otherwise; the two are never
mixed for the same value, so the term map is canonical and equality is
plain dict equality.

Internally an exponent triple is packed into one integer
``(e_q << 42) + (e_a << 21) + e_x``.  Adding packed keys adds exponents,
and integer order on packed keys is the lex order on ``(e_q, e_a, e_x)``,
which is a group order and therefore usable for exact division.
"""
from __future__ import annotations

import heapq
import re
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Iterator, Mapping, Union

from .errors import NotDivisible, ParseError, ZeroSubstitutionIntoNegativePower

Coeff = Union[int, Fraction]
Scalar = Union[int, Fraction]

_BITS = 21
_MASK = (1 << _BITS) - 1
_QSHIFT = 2 * _BITS
_MAX_EXP = _MASK

VARS = ("q", "a", "x")


def _pack(eq: int, ea: int, ex: int) -> int:
    if ea < 0 or ex < 0:
        raise ValueError("only q may carry a negative exponent")
    if ea > _MAX_EXP or ex > _MAX_EXP:
        raise OverflowError("exponent too large")
    return (eq << _QSHIFT) + (ea << _BITS) + ex


def _unpack(key: int) -> tuple[int, int, int]:
    return key >> _QSHIFT, (key >> _BITS) & _MASK, key & _MASK


def _norm(c) -> Coeff:
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, Rational):
        return _norm(Fraction(c.numerator, c.denominator))
    raise TypeError(f"coefficients must be exact rationals, got {type(c).__name__}")


def _display_key(key: int) -> tuple[int, int, int]:
    eq, ea, ex = _unpack(key)
    return ea, ex, eq


class SymPoly:
    """Immutable sparse polynomial over Q in q^{+-1}, a, x."""

    __slots__ = ("_t", "_hash")

    def __init__(self, terms: Union[Mapping[tuple[int, int, int], Scalar], Scalar, None] = None):
        t: dict[int, Coeff] = {}
        if terms is None:
            pass
        elif isinstance(terms, Mapping):
            for (eq, ea, ex), c in terms.items():
                c = _norm(c)
                if c:
                    k = _pack(eq, ea, ex)
                    t[k] = _norm(t.get(k, 0) + c)
                    if not t[k]:
                        del t[k]
        else:
            c = _norm(terms)
            if c:
                t[0] = c
        self._t = t
        self._hash = None

    @classmethod
    def _raw(cls, t: dict[int, Coeff]) -> "SymPoly":
        obj = object.__new__(cls)
        obj._t = t
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, coeff: Scalar = 1, q: int = 0, a: int = 0, x: int = 0) -> "SymPoly":
        c = _norm(coeff)
        return cls._raw({_pack(q, a, x): c} if c else {})

    # -- inspection -------------------------------------------------------

    def terms(self) -> dict[tuple[int, int, int], Coeff]:
        return {_unpack(k): c for k, c in self._t.items()}

    def items(self) -> list[tuple[tuple[int, int, int], Coeff]]:
        """Terms in canonical display order (ascending on (e_a, e_x, e_q))."""
        keys = sorted(self._t, key=_display_key)
        return [(_unpack(k), self._t[k]) for k in keys]

    def __len__(self) -> int:
        return len(self._t)

    def __bool__(self) -> bool:
        return bool(self._t)

    @property
    def is_zero(self) -> bool:
        return not self._t

    @property
    def is_constant(self) -> bool:
        return not self._t or (len(self._t) == 1 and 0 in self._t)

    def constant_value(self) -> Coeff:
        if not self.is_constant:
            raise ValueError(f"not a constant: {self}")
        return self._t.get(0, 0)

    def degree(self, var: str = "x") -> int:
        """Largest exponent of ``var``; -1 for the zero polynomial when var is a or x."""
        i = VARS.index(var)
        if not self._t:
            return -1
        return max(_unpack(k)[i] for k in self._t)

    def min_degree(self, var: str = "q") -> int:
        i = VARS.index(var)
        if not self._t:
            return 0
        return min(_unpack(k)[i] for k in self._t)

    def coeff(self, var: str, k: int) -> "SymPoly":
        """Coefficient of ``var**k`` as a polynomial in the remaining variables."""
        i = VARS.index(var)
        out: dict[int, Coeff] = {}
        for key, c in self._t.items():
            e = list(_unpack(key))
            if e[i] == k:
                e[i] = 0
                out[_pack(*e)] = c
        return SymPoly._raw(out)

    def x_coeffs(self) -> list["SymPoly"]:
        """Coefficients of x^0, x^1, ..., x^deg."""
        deg = self.degree("x")
        buckets: list[dict[int, Coeff]] = [{} for _ in range(deg + 1)]
        for key, c in self._t.items():
            ex = key & _MASK
            buckets[ex][key - ex] = c
        return [SymPoly._raw(b) for b in buckets]

    def uses(self, var: str) -> bool:
        i = VARS.index(var)
        return any(_unpack(k)[i] for k in self._t)

    # -- equality ---------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, SymPoly):
            return self._t == other._t
        if isinstance(other, (int, Fraction)):
            return self._t == SymPoly(other)._t
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._t.items()))
        return self._hash

    # -- ring operations --------------------------------------------------

    @staticmethod
    def _coerce(other) -> "SymPoly":
        if isinstance(other, SymPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return SymPoly(other)
        return NotImplemented

    def __add__(self, other) -> "SymPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(other._t) > len(self._t):
            big, small = other._t, self._t
        else:
            big, small = self._t, other._t
        t = dict(big)
        for k, c in small.items():
            v = t.get(k)
            if v is None:
                t[k] = c
            else:
                v = _norm(v + c)
                if v:
                    t[k] = v
                else:
                    del t[k]
        return SymPoly._raw(t)

    __radd__ = __add__

    def __neg__(self) -> "SymPoly":
        return SymPoly._raw({k: -c for k, c in self._t.items()})

    def __pos__(self) -> "SymPoly":
        return self

    def __sub__(self, other) -> "SymPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "SymPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other) -> "SymPoly":
        if isinstance(other, (int, Fraction)):
            c = _norm(other)
            if not c:
                return ZERO
            return SymPoly._raw({k: _norm(v * c) for k, v in self._t.items()})
        if not isinstance(other, SymPoly):
            return NotImplemented
        f, g = self._t, other._t
        if not f or not g:
            return ZERO
        if len(f) < len(g):
            f, g = g, f
        t: dict[int, Coeff] = {}
        get = t.get
        gitems = list(g.items())
        for k1, c1 in f.items():
            for k2, c2 in gitems:
                k = k1 + k2
                t[k] = get(k, 0) + c1 * c2
        out = {}
        for k, c in t.items():
            if c:
                out[k] = _norm(c) if isinstance(c, Fraction) else c
        return SymPoly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "SymPoly":
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            if len(self._t) == 1:
                (k, c), = self._t.items()
                eq, ea, ex = _unpack(k)
                if ea == 0 and ex == 0:
                    return SymPoly.monomial(Fraction(1) / c ** -n, q=eq * n)
            raise ValueError("negative powers only for monomials c*q^e")
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, other) -> "SymPoly":
        """Exact division; raises NotDivisible when no quotient exists."""
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * (Fraction(1) / other)
        if isinstance(other, SymPoly):
            return exact_divide(self, other)
        return NotImplemented

    def shift_q(self, e: int) -> "SymPoly":
        """Multiply by q**e."""
        if e == 0:
            return self
        s = e << _QSHIFT
        return SymPoly._raw({k + s: c for k, c in self._t.items()})

    # -- substitution -----------------------------------------------------

    def qscale(self, t: int) -> "SymPoly":
        """Rewrite q -> q**t."""
        if t < 1:
            raise ValueError("q -> q^t requires t >= 1")
        out = {}
        for k, c in self._t.items():
            eq, ea, ex = _unpack(k)
            out[_pack(eq * t, ea, ex)] = c
        return SymPoly._raw(out)

    def subs(self, q=None, a=None, x=None) -> "SymPoly":
        """Exact substitution of rationals for q/a, and a rational or SymPoly for x."""
        qv = None if q is None else _norm(q)
        av = None if a is None else _norm(a)
        x_poly = isinstance(x, SymPoly)
        xv = None if x is None or x_poly else _norm(x)

        by_ex: dict[int, dict[int, Coeff]] = {}
        for k, c in self._t.items():
            eq, ea, ex = _unpack(k)
            if qv is not None:
                if qv == 0:
                    if eq < 0:
                        raise ZeroSubstitutionIntoNegativePower(
                            f"q -> 0 in a term with q^{eq}")
                    if eq > 0:
                        continue
                else:
                    c = c * Fraction(qv) ** eq if eq < 0 else c * qv ** eq
                eq = 0
            if av is not None:
                c = c * av ** ea
                ea = 0
            if xv is not None:
                c = c * xv ** ex
                ex = 0
            if not c:
                continue
            bucket = by_ex.setdefault(ex if x_poly else 0, {})
            kk = _pack(eq, ea, 0 if x_poly else ex)
            bucket[kk] = bucket.get(kk, 0) + c

        if not x_poly:
            return SymPoly._raw({k: _norm(c) for k, c in by_ex.get(0, {}).items() if c})
        result = ZERO
        power = ONE
        for e in range(max(by_ex, default=-1) + 1):
            if e in by_ex:
                part = SymPoly._raw({k: _norm(c) for k, c in by_ex[e].items() if c})
                result = result + part * power
            power = power * x
        return result

    def __call__(self, x) -> "SymPoly":
        return self.subs(x=x)

    # -- rendering --------------------------------------------------------

    def __str__(self) -> str:
        return to_string(self)

    def __repr__(self) -> str:
        return f"SymPoly({to_string(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "SymPoly":
        return parse(text)


ZERO = SymPoly._raw({})
ONE = SymPoly._raw({0: 1})
Q = SymPoly.monomial(1, q=1)
A = SymPoly.monomial(1, a=1)
X = SymPoly.monomial(1, x=1)


def const(c: Scalar) -> SymPoly:
    return SymPoly(c)


def as_poly(v) -> SymPoly:
    if isinstance(v, SymPoly):
        return v
    return SymPoly(v)


def qpow(e: int) -> SymPoly:
    return SymPoly.monomial(1, q=e)


def substitute(f: SymPoly, *, q=None, a=None, x=None, q_power: int | None = None) -> SymPoly:
    """Functional form of :meth:`SymPoly.subs` that also accepts ``q_power`` (q -> q^t)."""
    if q_power is not None:
        if q is not None:
            raise ValueError("give either q or q_power, not both")
        f = f.qscale(q_power)
    return f.subs(q=q, a=a, x=x)


# -- exact division --------------------------------------------------------

def _div_coeff(c: Coeff, d: Coeff) -> Coeff:
    if isinstance(c, int) and isinstance(d, int) and c % d == 0:
        return c // d
    return _norm(Fraction(c) / d)


def exact_divide(f: SymPoly, g: SymPoly) -> SymPoly:
    """Return h with f == g*h, or raise NotDivisible.

    Leading-term division under the packed lex order.  A quotient term that
    leaves the box of admissible exponents proves non-divisibility, which is
    what guarantees termination in the Laurent direction.
    """
    if not g._t:
        raise ZeroDivisionError("exact_divide by zero polynomial")
    if not f._t:
        return ZERO
    if len(g._t) == 1:
        (gk, gc), = g._t.items()
        geq, gea, gex = _unpack(gk)
        out = {}
        for k, c in f._t.items():
            eq, ea, ex = _unpack(k)
            if ea < gea or ex < gex:
                raise NotDivisible(f"{f} is not divisible by {g}")
            out[_pack(eq - geq, ea - gea, ex - gex)] = _div_coeff(c, gc)
        return SymPoly._raw(out)

    fq_lo, fq_hi = f.min_degree("q"), f.degree("q")
    gq_lo, gq_hi = g.min_degree("q"), g.degree("q")
    q_lo, q_hi = fq_lo - gq_lo, fq_hi - gq_hi
    a_hi = f.degree("a") - g.degree("a")
    x_hi = f.degree("x") - g.degree("x")
    if q_lo > q_hi or a_hi < 0 or x_hi < 0:
        raise NotDivisible(f"{f} is not divisible by {g}")

    gk_lead = max(g._t)
    gc_lead = g._t[gk_lead]
    g_rest = [(k - gk_lead, c) for k, c in g._t.items() if k != gk_lead]

    rem = dict(f._t)
    heap = [-k for k in rem]
    heapq.heapify(heap)
    quot: dict[int, Coeff] = {}
    while rem:
        k = -heapq.heappop(heap)
        c = rem.pop(k, None)
        if c is None:
            continue
        # drain duplicates of the same key
        while heap and -heap[0] == k:
            heapq.heappop(heap)
        dk = k - gk_lead
        eq, ea, ex = _unpack(dk)
        if not (q_lo <= eq <= q_hi and 0 <= ea <= a_hi and 0 <= ex <= x_hi):
            raise NotDivisible(f"{f} is not divisible by {g}")
        qc = _div_coeff(c, gc_lead)
        quot[dk] = qc
        for rk, rc in g_rest:
            kk = k + rk
            v = rem.get(kk)
            if v is None:
                rem[kk] = -qc * rc
                heapq.heappush(heap, -kk)
            else:
                v = v - qc * rc
                if v:
                    rem[kk] = _norm(v) if isinstance(v, Fraction) else v
                else:
                    del rem[kk]
        # every popped key not in rem is dropped lazily
        while heap and -heap[0] not in rem:
            heapq.heappop(heap)
    return SymPoly._raw(quot)


def divides(g: SymPoly, f: SymPoly) -> bool:
    try:
        exact_divide(f, g)
    except NotDivisible:
        return False
    return True


# -- canonical string form -------------------------------------------------

def _coeff_str(c: Coeff) -> str:
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}"
    return str(c)


def _term_str(exps: tuple[int, int, int], c: Coeff) -> str:
    """Render |c| * monomial; sign is handled by the caller."""
    c = abs(c)
    factors = []
    for name, e in zip(VARS, exps):
        if e == 1:
            factors.append(name)
        elif e:
            factors.append(f"{name}^{e}")
    if not factors:
        return _coeff_str(c)
    if c == 1:
        return "*".join(factors)
    return "*".join([_coeff_str(c)] + factors)


def to_string(f: SymPoly) -> str:
    items = f.items()
    if not items:
        return "0"
    parts = []
    for i, (exps, c) in enumerate(items):
        body = _term_str(exps, c)
        if i == 0:
            parts.append(f"-{body}" if c < 0 else body)
        else:
            parts.append(f" - {body}" if c < 0 else f" + {body}")
    return "".join(parts)


_FACTOR_RE = re.compile(r"^([qax])(?:\^(-?\d+))?$")
_COEFF_RE = re.compile(r"^(\d+)(?:/(\d+))?$")


def _split_terms(text: str) -> Iterator[tuple[int, str]]:
    s = text.replace(" ", "")
    if not s:
        raise ParseError("empty polynomial string")
    sign, start = 1, 0
    if s[0] in "+-":
        sign = -1 if s[0] == "-" else 1
        start = 1
    i = start
    for j in range(start, len(s)):
        ch = s[j]
        if ch in "+-" and j > start and s[j - 1] != "^":
            yield sign, s[i:j]
            sign = -1 if ch == "-" else 1
            i = j + 1
    yield sign, s[i:]


def parse(text: str) -> SymPoly:
    """Parse the canonical string form (and reasonable variations of it)."""
    terms: dict[tuple[int, int, int], Fraction] = {}
    for sign, body in _split_terms(text.strip()):
        if not body:
            raise ParseError(f"dangling sign in {text!r}")
        coeff = Fraction(sign)
        exps = [0, 0, 0]
        for tok in body.split("*"):
            m = _COEFF_RE.match(tok)
            if m:
                num, den = m.group(1), m.group(2)
                if den is not None and int(den) == 0:
                    raise ParseError(f"zero denominator in {text!r}")
                coeff *= Fraction(int(num), int(den) if den else 1)
                continue
            m = _FACTOR_RE.match(tok)
            if not m:
                raise ParseError(f"bad factor {tok!r} in {text!r}")
            var, e = m.group(1), int(m.group(2) or 1)
            i = VARS.index(var)
            if e < 0 and var != "q":
                raise ParseError(f"negative exponent on {var} in {text!r}")
            exps[i] += e
        key = tuple(exps)
        terms[key] = terms.get(key, 0) + coeff
    return SymPoly(terms)


def poly_sum(values: Iterable[SymPoly]) -> SymPoly:
    total: dict[int, Coeff] = {}
    for v in values:
        for k, c in v._t.items():
            total[k] = total.get(k, 0) + c
    return SymPoly._raw({k: _norm(c) for k, c in total.items() if c})


def poly_prod(values: Iterable[SymPoly]) -> SymPoly:
    result = ONE
    for v in values:
        result = result * v
    return result
