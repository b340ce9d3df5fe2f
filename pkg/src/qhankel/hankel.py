"""Hankel matrices and two independent exact determinant engines.

``det_laplace`` (cofactor expansion memoized on column subsets) is
division-free and is the oracle of record.  ``det_bareiss`` is fraction-free
elimination whose interior divisions are all exact; a failed division there
is an internal error, never a recoverable condition.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .errors import AlgorithmDisagreement, OrderTooLarge
from .poly import ONE, ZERO, SymPoly, as_poly, exact_divide
from .sequences import Params, _as_params, bell_oracle, dowling, moment_poly, phi_at_a

SEQ_KINDS = (
    "phi_at_a",
    "moment_weighted",
    "dowling_first",
    "dowling_second",
    "dowling_third",
    "bell_classical",
)

LAPLACE_MAX_ORDER = 8


@dataclass(frozen=True)
class SeqSpec:
    params: Params
    kind: str = "phi_at_a"
    subst: tuple[tuple[str, Fraction], ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "params", _as_params(self.params))
        if self.kind not in SEQ_KINDS:
            raise ValueError(f"unknown sequence kind {self.kind!r}; expected one of {SEQ_KINDS}")
        cleaned = {}
        for var, val in (self.subst.items() if isinstance(self.subst, dict) else self.subst):
            if var not in ("q", "a"):
                raise ValueError(f"sequence substitutions bind q or a, not {var!r}")
            cleaned[var] = Fraction(val)
        object.__setattr__(self, "subst", tuple(sorted(cleaned.items())))

    def entry(self, n: int) -> SymPoly:
        return _entry(self, n)

    def values(self, count: int) -> list[SymPoly]:
        return [_entry(self, i) for i in range(count)]


@lru_cache(maxsize=None)
def _entry(spec: SeqSpec, n: int) -> SymPoly:
    p, kind = spec.params, spec.kind
    if kind == "phi_at_a":
        v = phi_at_a(p, n)
    elif kind == "moment_weighted":
        v = moment_poly(p, n)
    elif kind == "bell_classical":
        v = SymPoly(bell_oracle(n))
    else:
        v = dowling(p, n, kind.split("_", 1)[1])
    if spec.subst:
        v = v.subs(**dict(spec.subst))
    return v


@dataclass(frozen=True)
class HankelMatrix:
    order: int
    offset: int
    entries: tuple[tuple[SymPoly, ...], ...]

    @classmethod
    def from_values(cls, values: Sequence, order: int, offset: int = 0) -> "HankelMatrix":
        if order < 1:
            raise ValueError("Hankel order must be >= 1")
        if offset not in (0, 1):
            raise ValueError("offset must be 0 or 1")
        need = 2 * order - 1 + offset
        if len(values) < need:
            raise ValueError(f"need {need} sequence values, got {len(values)}")
        vals = [as_poly(v) for v in values]
        rows = tuple(tuple(vals[i + j + offset] for j in range(order)) for i in range(order))
        return cls(order, offset, rows)

    def transpose(self) -> "HankelMatrix":
        return HankelMatrix(self.order, self.offset, tuple(zip(*self.entries)))

    def rows(self) -> list[list[SymPoly]]:
        return [list(r) for r in self.entries]


def hankel_matrix(seq: SeqSpec, order: int, offset: int = 0) -> HankelMatrix:
    if order < 1:
        raise ValueError("Hankel order must be >= 1")
    return HankelMatrix.from_values(seq.values(2 * order - 1 + offset), order, offset)


def _square(M) -> list[list[SymPoly]]:
    rows = M.rows() if isinstance(M, HankelMatrix) else [[as_poly(v) for v in r] for r in M]
    d = len(rows)
    if any(len(r) != d for r in rows):
        raise ValueError("matrix is not square")
    return rows


def det_laplace(M, max_order: int = LAPLACE_MAX_ORDER) -> SymPoly:
    """Row-by-row cofactor expansion memoized on the set of unused columns."""
    rows = _square(M)
    d = len(rows)
    if d > max_order:
        raise OrderTooLarge(f"Laplace expansion limited to order {max_order}, got {d}")
    if d == 0:
        return ONE
    # minors[mask] = det of the last popcount(mask) rows restricted to columns in mask
    minors: dict[int, SymPoly] = {0: ONE}
    by_size: list[list[int]] = [[] for _ in range(d + 1)]
    for mask in range(1 << d):
        by_size[bin(mask).count("1")].append(mask)
    for size in range(1, d + 1):
        row = rows[d - size]
        for mask in by_size[size]:
            total = ZERO
            sign = 1
            for j in range(d):
                bit = 1 << j
                if mask & bit:
                    entry = row[j]
                    if entry:
                        sub = minors[mask ^ bit]
                        if sub:
                            term = entry * sub
                            total = total + term if sign > 0 else total - term
                    sign = -sign
            minors[mask] = total
    return minors[(1 << d) - 1]


def det_bareiss(M) -> SymPoly:
    """Fraction-free Gaussian elimination with row pivoting on zero pivots."""
    a = _square(M)
    d = len(a)
    if d == 0:
        return ONE
    sign = 1
    prev = ONE
    for k in range(d - 1):
        if a[k][k].is_zero:
            for i in range(k + 1, d):
                if not a[i][k].is_zero:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return ZERO
        piv = a[k][k]
        for i in range(k + 1, d):
            aik = a[i][k]
            for j in range(k + 1, d):
                num = piv * a[i][j] - aik * a[k][j]
                a[i][j] = num if prev == ONE else exact_divide(num, prev)
            a[i][k] = ZERO
        prev = piv
    det = a[d - 1][d - 1]
    return -det if sign < 0 else det


def hankel_transform(seq: SeqSpec, d: int, offset: int = 0, algo: str = "both",
                     max_order: int = LAPLACE_MAX_ORDER) -> SymPoly:
    """Determinant of the order-d Hankel matrix of ``seq``; order 0 gives 1."""
    if algo not in ("laplace", "bareiss", "both"):
        raise ValueError(f"unknown algorithm {algo!r}")
    if d < 0:
        raise ValueError("order must be >= 0")
    if d == 0:
        return ONE
    M = hankel_matrix(seq, d, offset)
    return determinant(M, algo, max_order)


def determinant(M, algo: str = "both", max_order: int = LAPLACE_MAX_ORDER) -> SymPoly:
    if algo == "laplace":
        return det_laplace(M, max_order)
    if algo == "bareiss":
        return det_bareiss(M)
    lap = det_laplace(M, max_order)
    bar = det_bareiss(M)
    if lap != bar:
        raise AlgorithmDisagreement(
            f"Laplace and Bareiss disagree on an order-{len(_square(M))} matrix:\n"
            f"  laplace = {lap}\n  bareiss = {bar}")
    return lap
