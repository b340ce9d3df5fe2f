"""Closed-form Hankel transforms and the engine that checks them.

Each closed form declares its own matrix-order convention: some are stated
for the (n+1)x(n+1) matrix on indices 0..n, others for the n x n matrix.
``verify`` evaluates the determinant oracle at that order and records the
exact difference.  A mismatch is a result, not an error.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, prod
from typing import Callable, Optional

from .hankel import SeqSpec, hankel_transform
from .orthopoly import c_paper, h_poly, monic_op
from .poly import A, ONE, SymPoly, poly_prod, poly_sum
from .qcore import RatExpr, binom2, binom3, qbinomial, qfactorial, qint, qpochhammer
from .sequences import Params, _as_params


def bell_hankel_rhs(n: int) -> int:
    """prod_{k=0}^n k!  (order n+1)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return prod(factorial(k) for k in range(n + 1))


def _shifted_pochhammer_factor(j: int, step: int) -> SymPoly:
    # 1 - q^(step*(j-1)) (1-q) a
    return ONE - (A - A.shift_q(1)).shift_q(step * (j - 1))


def thm31_rhs(p, n: int) -> SymPoly:
    """q^(2r C(n,2) + (m+1) C(n,3)) a^C(n,2) prod_{i<n} prod_{j=1..i} [mj]_q (1 - q^(j-1)(1-q)a).

    Order n.  Agrees with the determinant oracle for m = 1 only.
    """
    p = _as_params(p)
    m, r = p.m, p.r
    pre = SymPoly.monomial(1, q=2 * r * binom2(n) + (m + 1) * binom3(n), a=binom2(n))
    return pre * poly_prod(
        qint(m * j) * _shifted_pochhammer_factor(j, 1)
        for i in range(n) for j in range(1, i + 1))


def thm31_corrected_rhs(p, n: int) -> SymPoly:
    """q^(2r C(n,2) + 2m C(n,3)) a^C(n,2) prod_{i<n} prod_{j=1..i} [mj]_q (1 - q^(m(j-1))(1-q)a).

    Order n.  Product of the corrected c(j); coincides with thm31_rhs at m = 1.
    """
    p = _as_params(p)
    m, r = p.m, p.r
    pre = SymPoly.monomial(1, q=2 * r * binom2(n) + 2 * m * binom3(n), a=binom2(n))
    return pre * poly_prod(
        qint(m * j) * _shifted_pochhammer_factor(j, m)
        for i in range(n) for j in range(1, i + 1))


def cigler_rhs(r: int, n: int) -> SymPoly:
    """m = 1 form: q^(2r C(n,2) + 2 C(n,3)) a^C(n,2) prod_{i<n} [i]_q! ((1-q)a; q)_i."""
    z = A - A.shift_q(1)
    pre = SymPoly.monomial(1, q=2 * r * binom2(n) + 2 * binom3(n), a=binom2(n))
    return pre * poly_prod(qfactorial(i) * qpochhammer(z, i) for i in range(n))


def corollary_rhs(p, n: int, variant: str = "a1") -> SymPoly:
    """Hankel transform of the first-form Dowling numbers (order n).

    a1        thm31_rhs with a -> 1, since D[n] = Phi_n at x = 1
    printed   the displayed expression: keeps ((1-q)a; q)_i with a free and
              has no a^C(n,2) factor
    corrected thm31_corrected_rhs with a -> 1
    """
    p = _as_params(p)
    if variant == "a1":
        return thm31_rhs(p, n).subs(a=1)
    if variant == "corrected":
        return thm31_corrected_rhs(p, n).subs(a=1)
    if variant == "printed":
        m, r = p.m, p.r
        z = A - A.shift_q(1)
        pre = SymPoly.monomial(1, q=2 * r * binom2(n) + (m + 1) * binom3(n))
        return pre * poly_prod(
            qpochhammer(z, i) * poly_prod(qint(m * j) for j in range(1, i + 1))
            for i in range(n))
    raise ValueError(f"unknown corollary variant {variant!r}")


def c_product_rhs(p, n: int) -> SymPoly:
    """prod_{i<n} prod_{j=1..i} c(j) with the printed c (order n)."""
    p = _as_params(p)
    return poly_prod(c_paper(p, j) for i in range(n) for j in range(1, i + 1))


def thirdform_rhs(p, n: int, sign_flipped: bool = False) -> SymPoly:
    """q^(m C(n+1,3) -+ r n(n+1)) prod_{k=0}^n [k]_{q^m}! [m]_q^C(n+1,2)  (order n+1).

    The printed exponent has -r n(n+1); ``sign_flipped`` uses +r n(n+1).
    """
    p = _as_params(p)
    m, r = p.m, p.r
    s = 1 if sign_flipped else -1
    return (SymPoly.monomial(1, q=m * binom3(n + 1) + s * r * n * (n + 1))
            * poly_prod(qfactorial(k, m) for k in range(n + 1))
            * qint(m) ** binom2(n + 1))


def secondform_rhs(p, n: int, corrected: bool = False) -> SymPoly:
    """[m]_q^C(n,2) q^(C(n,3) + r C(n,2)) prod_{k<n} [k]_{q^m}!  (order n).

    ``corrected`` uses q^(m C(n,3) + r C(n,2)), which is what the oracle
    gives for m > 1.
    """
    p = _as_params(p)
    m, r = p.m, p.r
    e3 = m * binom3(n) if corrected else binom3(n)
    return (qint(m) ** binom2(n)
            * SymPoly.monomial(1, q=e3 + r * binom2(n))
            * poly_prod(qfactorial(k, m) for k in range(n)))


def _thm32_printed_sum(p: Params, n: int) -> SymPoly:
    # sum_k (-1)^n a^k q^C(k,2) [n,k]_q prod_{j<k} [r+jm]_q / q^(r+jm)
    terms = []
    for k in range(n + 1):
        weight = poly_prod(qint(p.r + j * p.m).shift_q(-(p.r + j * p.m)) for j in range(k))
        terms.append(SymPoly.monomial((-1) ** n, q=binom2(k), a=k) * qbinomial(n, k) * weight)
    return poly_sum(terms)


def thm32_rhs(p, n: int, variant: str = "printed", seq: Optional[SeqSpec] = None) -> SymPoly:
    """Shifted (offset 1, order n) Hankel determinant.

    printed           thm31_rhs times the displayed sum, with its [x]_q^k
                      read as a^k
    proof_consistent  d(n,0) (-1)^n P_n(0), with d(n,0) from the determinant
                      oracle and P_n the monic orthogonal polynomial computed
                      from the moments
    corrected         thm31_corrected_rhs (-1)^n h_n(0) from the corrected
                      closed forms only
    """
    p = _as_params(p)
    if variant == "printed":
        return thm31_rhs(p, n) * _thm32_printed_sum(p, n)
    if variant == "corrected":
        h0 = h_poly(p, n, "corrected").subs(x=0)
        return thm31_corrected_rhs(p, n) * h0 * (-1) ** n
    if variant == "proof_consistent":
        seq = seq or SeqSpec(p, "phi_at_a")
        moments = seq.values(2 * n)
        d0 = hankel_transform(seq, n, 0)
        if n == 0:
            return ONE
        const_coeff = monic_op(p, n, moments).coeffs[0]
        return (const_coeff * RatExpr(d0) * (-1) ** n).to_poly()
    raise ValueError(f"unknown thm32 variant {variant!r}")


# -- verification -----------------------------------------------------------

@dataclass(frozen=True)
class Target:
    name: str
    seq_kinds: tuple[str, ...]
    order: Callable[[int], int]
    offset: int
    variants: tuple[str, ...]
    rhs: Callable[[Params, int, str, SeqSpec], SymPoly]
    fixed_params: Optional[Params] = None
    fixed_m: Optional[int] = None
    default_subst: tuple[tuple[str, Fraction], ...] = ()


def _same_order(n: int) -> int:
    return n


def _next_order(n: int) -> int:
    return n + 1


TARGETS: dict[str, Target] = {
    "bell": Target(
        "bell", ("dowling_first", "phi_at_a", "bell_classical"), _next_order, 0, ("printed",),
        lambda p, n, v, s: SymPoly(bell_hankel_rhs(n)),
        fixed_params=Params(1, 0),
        default_subst=(("a", Fraction(1)), ("q", Fraction(1)))),
    "thm31": Target(
        "thm31", ("phi_at_a", "moment_weighted"), _same_order, 0, ("printed", "corrected"),
        lambda p, n, v, s: thm31_rhs(p, n) if v == "printed" else thm31_corrected_rhs(p, n)),
    "c_product": Target(
        "c_product", ("phi_at_a", "moment_weighted"), _same_order, 0, ("printed",),
        lambda p, n, v, s: c_product_rhs(p, n)),
    "cigler": Target(
        "cigler", ("phi_at_a", "moment_weighted"), _same_order, 0, ("printed",),
        lambda p, n, v, s: cigler_rhs(p.r, n),
        fixed_m=1),
    "corollary": Target(
        "corollary", ("dowling_first",), _same_order, 0, ("a1", "printed", "corrected"),
        lambda p, n, v, s: corollary_rhs(p, n, v)),
    "eq10": Target(
        "eq10", ("dowling_third",), _next_order, 0, ("printed", "sign_flipped"),
        lambda p, n, v, s: thirdform_rhs(p, n, sign_flipped=(v == "sign_flipped"))),
    "secondform": Target(
        "secondform", ("dowling_second",), _same_order, 0, ("printed", "corrected"),
        lambda p, n, v, s: secondform_rhs(p, n, corrected=(v == "corrected"))),
    "thm32": Target(
        "thm32", ("phi_at_a", "moment_weighted"), _same_order, 1,
        ("printed", "proof_consistent", "corrected"),
        lambda p, n, v, s: thm32_rhs(p, n, v, s)),
}


@dataclass(frozen=True, eq=False)
class VerifyRow:
    n: int
    order: int
    lhs: SymPoly
    rhs: SymPoly
    diff: SymPoly
    match: bool


@dataclass(eq=False)
class VerifyReport:
    target: str
    params: Params
    seq: str
    variant: str
    subst: tuple[tuple[str, Fraction], ...] = ()
    rows: list[VerifyRow] = field(default_factory=list)

    @property
    def first_mismatch(self) -> Optional[int]:
        for row in self.rows:
            if not row.match:
                return row.n
        return None

    @property
    def all_match(self) -> bool:
        return self.first_mismatch is None

    def row(self, n: int) -> VerifyRow:
        for r in self.rows:
            if r.n == n:
                return r
        raise KeyError(n)


def resolve_target(target: str, params, seq: Optional[str], variant: Optional[str]):
    if target not in TARGETS:
        raise ValueError(f"unknown target {target!r}; expected one of {sorted(TARGETS)}")
    t = TARGETS[target]
    p = _as_params(params)
    if t.fixed_params is not None:
        p = t.fixed_params
    elif t.fixed_m is not None:
        p = Params(t.fixed_m, p.r)
    seq = seq or t.seq_kinds[0]
    if seq not in t.seq_kinds:
        raise ValueError(f"target {target!r} takes seq in {t.seq_kinds}, got {seq!r}")
    variant = variant or t.variants[0]
    if variant not in t.variants:
        raise ValueError(f"target {target!r} takes variant in {t.variants}, got {variant!r}")
    return t, p, seq, variant


def verify(target: str, params=Params(1, 0), n_max: int = 3, seq: Optional[str] = None,
           variant: Optional[str] = None, subst=None, algo: str = "both") -> VerifyReport:
    """Compare the determinant oracle with a closed form for n = 0..n_max.

    The oracle runs both determinant engines by default; their disagreement
    raises AlgorithmDisagreement.  Closed-form mismatches are only recorded.
    """
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    t, p, seq, variant = resolve_target(target, params, seq, variant)
    bindings = dict(t.default_subst)
    if subst:
        bindings.update({k: Fraction(v) for k, v in dict(subst).items()})
    spec = SeqSpec(p, seq, tuple(bindings.items()))
    symbolic = SeqSpec(p, seq)
    report = VerifyReport(target, p, seq, variant, spec.subst)
    for n in range(n_max + 1):
        d = t.order(n)
        lhs = hankel_transform(spec, d, t.offset, algo)
        rhs = t.rhs(p, n, variant, symbolic)
        if bindings:
            rhs = rhs.subs(**bindings)
        diff = lhs - rhs
        report.rows.append(VerifyRow(n, d, lhs, rhs, diff, diff.is_zero))
    return report
