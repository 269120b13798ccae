"""Riccati recurrence, odd/even split, primitives and coefficient streams."""

from fractions import Fraction as Fr

import pytest

from exactwkb.airy_wkb import (check_even_is_log_derivative, closed_form_coefficients,
                               integrate_s_odd, riccati_recurrence, riccati_residual,
                               split_odd_even, wkb_coefficient_stream)
from exactwkb.errors import PreconditionError


@pytest.fixture(scope="module")
def solution():
    return riccati_recurrence(12, "+")


class TestRecurrence:
    @pytest.mark.parametrize("j,coeff", [
        (-1, Fr(1)),
        (0, Fr(-1, 4)),
        (1, Fr(-5, 32)),
        (2, Fr(-15, 64)),
        (3, Fr(-1105, 2048)),
        (4, Fr(-1695, 1024)),   # recurrence output; matches the displayed magnitude
    ])
    def test_published_low_order_values(self, solution, j, coeff):
        assert solution.coefficient(j) == coeff

    def test_monomial_exponent_law(self, solution):
        for j in range(-1, solution.order + 1):
            term = solution.term(j)
            exponents = list(term.terms)
            assert exponents == [Fr(-(3 * j + 2), 2)]

    def test_residual_vanishes_to_truncation(self, solution):
        residual = riccati_residual(solution)
        assert residual.is_zero()
        assert residual.truncation == solution.order - 1

    def test_minus_branch_parity(self, solution):
        minus = riccati_recurrence(12, "-")
        for j in range(-1, 13):
            assert minus.coefficient(j) == (-1) ** j * solution.coefficient(j)

    def test_weighted_homogeneity_of_exponents(self, solution):
        # (x, eta) -> (l^2 x, l^-3 eta) multiplies eta^-j x^e by l^(2e + 3j);
        # every term of S must scale like S itself, i.e. weight -2... +1 for
        # the eta-power bookkeeping handled per term below
        for j in range(-1, solution.order + 1):
            e = Fr(-(3 * j + 2), 2)
            assert 2 * e + 3 * j == -2


class TestSplitAndIntegrate:
    def test_split_reproduces_display(self, solution):
        s_odd, s_even = split_odd_even(solution)
        assert s_odd.coeff(-1).coeff(Fr(1, 2)) == 1
        assert s_odd.coeff(1).coeff(Fr(-5, 2)) == Fr(-5, 32)
        assert s_odd.coeff(3).coeff(Fr(-11, 2)) == Fr(-1105, 2048)
        assert s_even.coeff(0).coeff(-1) == Fr(-1, 4)
        assert s_even.coeff(2).coeff(-4) == Fr(-15, 64)

    def test_even_part_is_log_derivative(self, solution):
        s_odd, s_even = split_odd_even(solution)
        assert check_even_is_log_derivative(s_odd, s_even)

    def test_both_signs_share_the_split(self):
        plus = split_odd_even(riccati_recurrence(8, "+"))
        minus = split_odd_even(riccati_recurrence(8, "-"))
        assert plus[0].same_terms(minus[0])
        assert plus[1].same_terms(minus[1])

    def test_primitive_values(self, solution):
        prim = integrate_s_odd(split_odd_even(solution)[0])
        assert prim.coeff(-1).coeff(Fr(3, 2)) == Fr(2, 3)
        assert prim.coeff(1).coeff(Fr(-3, 2)) == Fr(5, 48)
        assert prim.coeff(3).coeff(Fr(-9, 2)) == Fr(1105, 9216)

    def test_split_needs_enough_order(self):
        with pytest.raises(PreconditionError):
            split_odd_even(riccati_recurrence(1))


class TestCoefficientStream:
    def test_normalization_and_first_values(self):
        stream = wkb_coefficient_stream(4, "+")
        assert stream.coeffs[0] == 1
        assert stream.coeffs[1] == Fr(5, 48)
        assert stream.coeffs[2] == Fr(385, 4608)

    def test_sign_parity(self):
        plus = wkb_coefficient_stream(15, "+")
        minus = wkb_coefficient_stream(15, "-")
        for n in range(16):
            assert minus.coeffs[n] == (-1) ** n * plus.coeffs[n]

    @pytest.mark.parametrize("sign", ["+", "-"])
    def test_two_derivations_agree_exactly(self, sign):
        stream = wkb_coefficient_stream(20, sign)
        closed = closed_form_coefficients(20, sign)
        assert list(stream.coeffs) == closed

    def test_closed_form_low_orders(self):
        closed = closed_form_coefficients(1, "+")
        assert closed == [Fr(1), Fr(5, 48)]
        assert closed_form_coefficients(1, "-")[1] == Fr(-5, 48)
