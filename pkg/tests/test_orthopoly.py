import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qhankel.errors import DegenerateMoments, SingularSystem
from qhankel.orthopoly import (
    MonicPoly, RecurrenceCoeffs, basis_convert, c_paper, corrected_coeffs, functional_G,
    g_poly, h_poly, monic_op, norm_product, p_poly, paper_coeffs, recover_recurrence,
    recurrence_residual,
)
from qhankel.poly import A, ONE, Q, X, ZERO, poly_prod
from qhankel.qcore import RatExpr, binom2, qderiv, qint
from qhankel.sequences import gen_factorial_normalized, phi_at_a, whitney_first

from conftest import sympolys

ALL_M = [(1, 0), (1, 2), (2, 1), (3, 2)]


class TestP:
    def test_examples(self):
        assert p_poly(0) == ONE
        assert p_poly(1) == X - A

    @pytest.mark.parametrize("n", range(7))
    def test_identities(self, n):
        p = p_poly(n)
        assert X * p == p_poly(n + 1) + A * Q ** n * p
        if n:
            assert qderiv(p) == qint(n) * p_poly(n - 1)
        assert p == poly_prod(X - Q ** j * A for j in range(n))

    @pytest.mark.parametrize("n", range(1, 6))
    def test_vanishes_at_a(self, n):
        assert p_poly(n).subs(x=A) == ZERO

    def test_base_m_version(self):
        # q^m-derivative of the base-q^m polynomial steps down cleanly
        for n in range(1, 5):
            assert qderiv(p_poly(n, 2), 2) == qint(n, 2) * p_poly(n - 1, 2)
        # but not of the base-q one
        assert qderiv(p_poly(2), 2) != qint(2, 2) * p_poly(1)


class TestH:
    @pytest.mark.parametrize("family", ["printed", "corrected"])
    def test_examples(self, family):
        for p in ALL_M:
            r = p[1]
            assert g_poly(p, 0, family) == ONE and h_poly(p, 0, family) == ONE
            assert h_poly(p, 1, family) == X - qint(r) - Q ** r * A
            for n in range(7):
                h = h_poly(p, n, family)
                assert h.degree("x") == n and h.coeff("x", n) == ONE

    def test_families_coincide_for_m1(self):
        for n in range(6):
            assert h_poly((1, 2), n, "printed") == h_poly((1, 2), n, "corrected")
        assert h_poly((2, 1), 2, "printed") != h_poly((2, 1), 2, "corrected")

    def test_h_is_scaled_g(self):
        for p in ALL_M:
            m, r = p
            for n in range(5):
                assert h_poly(p, n) == g_poly(p, n).shift_q(m * binom2(n) + r * n)

    def test_bad_family(self):
        with pytest.raises(ValueError):
            h_poly((1, 0), 2, "other")


class TestFunctional:
    def test_normalization(self):
        for p in ALL_M:
            assert functional_G(p, ONE) == ONE
            assert functional_G(p, h_poly(p, 0)) == ONE

    @pytest.mark.parametrize("p", ALL_M)
    def test_generalized_factorials_map_to_powers(self, p):
        for n in range(6):
            assert functional_G(p, gen_factorial_normalized(p, n)) == A ** n

    @pytest.mark.parametrize("p", [(1, 0), (1, 2)])
    def test_printed_family_orthogonal_when_m_is_1(self, p):
        for n in range(1, 6):
            for k in range(n):
                assert functional_G(p, X ** k * h_poly(p, n)) == ZERO

    @pytest.mark.parametrize("p", [(1, 0), (2, 1), (3, 2)])
    def test_corrected_family_orthogonal(self, p):
        for n in range(1, 6):
            for k in range(n):
                assert functional_G(p, X ** k * h_poly(p, n, "corrected")) == ZERO

    def test_printed_family_not_orthogonal_for_m2(self):
        p = (2, 1)
        assert functional_G(p, h_poly(p, 1)) == ZERO
        assert functional_G(p, h_poly(p, 2)) == ZERO
        assert functional_G(p, X * h_poly(p, 2)) != ZERO

    def test_weighted_moments_break_orthogonality(self):
        p = (1, 0)
        assert functional_G(p, X * h_poly(p, 2), moments="weighted") != ZERO


class TestBasis:
    def test_examples(self):
        for p in ALL_M:
            assert basis_convert(p, ONE) == [ONE]
            assert basis_convert(p, X) == [qint(p[1]), Q ** p[1]]
            assert basis_convert(p, X ** 3) == [whitney_first(p, 3, k) for k in range(4)]

    @settings(max_examples=25)
    @given(sympolys(max_terms=4, x_max=6), st.sampled_from(ALL_M))
    def test_round_trip(self, f, p):
        coeffs = basis_convert(p, f, "monomial->genfact")
        assert basis_convert(p, coeffs, "genfact->monomial") == f

    def test_bad_direction(self):
        with pytest.raises(ValueError):
            basis_convert((1, 0), X, "sideways")


class TestRecurrence:
    @pytest.mark.parametrize("p", [(1, 0), (1, 2)])
    def test_printed_family_m1(self, p):
        for n in range(1, 6):
            rec = recover_recurrence(p, n)
            assert rec.g_rec == 1
            assert recurrence_residual(p, n, rec.g_rec, rec.f_rec, rec.c_rec).is_zero
            assert rec.c_rec.is_poly and rec.f_rec.is_poly

    @pytest.mark.parametrize("p", [(1, 0), (2, 1), (3, 2)])
    def test_corrected_family(self, p):
        for n in range(1, 6):
            rec = recover_recurrence(p, n, "corrected")
            assert rec.g_rec == 1
            assert recurrence_residual(p, n, rec.g_rec, rec.f_rec, rec.c_rec, "corrected").is_zero
            g, f, c = corrected_coeffs(p, n)
            assert rec.g_rec == g and rec.f_rec == f and rec.c_rec == c

    def test_printed_family_has_no_recurrence_for_m2(self):
        p = (2, 1)
        recover_recurrence(p, 1)
        with pytest.raises(SingularSystem):
            recover_recurrence(p, 2)

    def test_hand_value_c1(self):
        for p in ALL_M:
            m, r = p
            expected = Q ** (2 * r) * qint(m) * A * (1 - (1 - Q) * A)
            assert recover_recurrence(p, 1).c_rec == expected
            assert c_paper(p, 1) == expected

    def test_m1_n1_solved_exactly(self):
        rec = recover_recurrence((1, 0), 1)
        assert isinstance(rec, RecurrenceCoeffs)
        lhs = X * h_poly((1, 0), 1)
        rhs = h_poly((1, 0), 2) + rec.f_rec.to_poly() * h_poly((1, 0), 1) + rec.c_rec.to_poly()
        assert lhs == rhs

    def test_bad_index(self):
        with pytest.raises(ValueError):
            recover_recurrence((1, 0), 0)


class TestPrintedCoefficients:
    def test_examples(self):
        for p in ALL_M:
            m, r = p
            g, f, c = paper_coeffs(p, 1)
            assert g == (1 + Q ** m) * Q ** -m
            assert f.subs(a=0) == qint(r) + Q ** r * qint(m) * qint(1, m)
            for n in range(1, 5):
                assert paper_coeffs(p, n)[1].subs(a=0) == qint(r) + Q ** r * qint(m) * qint(n, m)

    @pytest.mark.parametrize("p", [(1, 0), (1, 2)])
    def test_discrepancies_m1(self, p):
        for n in range(1, 6):
            rec = recover_recurrence(p, n)
            g, f, c = paper_coeffs(p, n)
            assert rec.g_rec != g
            assert rec.c_rec == c
            assert rec.f_rec != f  # recorded: the doubled q^(n+r) a term

    def test_discrepancies_m2(self):
        p = (2, 1)
        for n in range(1, 6):
            rec = recover_recurrence(p, n, "corrected")
            g, f, c = paper_coeffs(p, n)
            assert rec.g_rec != g
            assert (rec.c_rec == c) == (n == 1)

    def test_norm_product(self):
        for p in ALL_M:
            assert norm_product(p, 0) == ONE
            assert norm_product(p, 1) == c_paper(p, 1)
        assert norm_product((1, 2), 3) == norm_product((1, 2), 3, source="recovered")
        with pytest.raises(ValueError):
            norm_product((1, 0), 2, source="elsewhere")


@pytest.mark.parametrize("p,family", [((1, 0), "printed"), ((1, 2), "printed"),
                                      ((2, 1), "corrected"), ((3, 2), "corrected")])
def test_norm_identity(p, family):
    for n in range(1, 5):
        lhs = functional_G(p, X ** n * h_poly(p, n, family))
        assert lhs == norm_product(p, n, source="recovered", family=family)


class TestMonicOp:
    def test_examples(self):
        for p in ALL_M:
            assert monic_op(p, 0) == ONE
            assert monic_op(p, 1) == X - phi_at_a(p, 1)

    @pytest.mark.parametrize("p", [(1, 0), (1, 2)])
    def test_equals_printed_h_when_m_is_1(self, p):
        for n in range(5):
            assert monic_op(p, n) == h_poly(p, n)

    @pytest.mark.parametrize("p", [(2, 1), (3, 2)])
    def test_equals_corrected_h(self, p):
        for n in range(5):
            assert monic_op(p, n) == h_poly(p, n, "corrected")
        assert not (monic_op(p, 2) == h_poly(p, 2))

    def test_evaluation_and_polynomial_form(self):
        op = monic_op((2, 1), 2)
        assert op.to_poly() == h_poly((2, 1), 2, "corrected")
        assert op.at(0) == h_poly((2, 1), 2, "corrected").subs(x=0)

    def test_degenerate_moments(self):
        with pytest.raises(DegenerateMoments):
            monic_op((1, 0), 2, [ONE, ONE, ONE, ONE])
        with pytest.raises(ValueError):
            monic_op((1, 0), 2, [ONE])

    def test_rational_coefficients(self):
        op = monic_op((1, 0), 1, [2 * ONE, Q])
        assert op == MonicPoly((RatExpr(-Q, 2 * ONE), RatExpr(ONE)))
