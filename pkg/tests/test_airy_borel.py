"""Borel transforms as exact expansions, checked against the Gauss series."""

from fractions import Fraction as Fr

import pytest

from exactwkb.airy_borel import (borel_series, borel_transform, exchange_symmetry_holds,
                                 hypergeometric_oracle)
from exactwkb.airy_wkb import wkb_coefficient_stream


class TestBorelTransform:
    def test_leading_exponent_is_minus_half(self):
        for sign in "+-":
            series = borel_series(6, sign).series
            assert series.valuation() == Fr(-1, 2)
            assert series.coeff(Fr(-1, 2)) == 1

    def test_first_tail_coefficient(self):
        assert borel_series(3, "+").coefficients(2)[1] == Fr(5, 18)

    def test_base_points_and_i_tag(self):
        plus = borel_series(3, "+")
        minus = borel_series(3, "-")
        assert plus.base_point == 0 and not plus.prefactor_i
        assert minus.base_point == 1 and minus.prefactor_i
        assert plus.series.variable == "s"
        assert minus.series.variable == "u"

    def test_coefficients_are_rational(self):
        for sign in "+-":
            for c in borel_transform(wkb_coefficient_stream(10, sign)).coefficients(11):
                assert isinstance(c, Fr)


class TestHypergeometricOracle:
    def test_low_order_values(self):
        coeffs = hypergeometric_oracle("+", 3)
        assert coeffs == [Fr(1), Fr(5, 18), Fr(385, 1944)]

    @pytest.mark.parametrize("sign", ["+", "-"])
    def test_oracle_matches_transform_to_20(self, sign):
        mine = borel_series(20, sign).coefficients(21)
        assert mine == hypergeometric_oracle(sign, 21)

    def test_exchange_symmetry(self):
        assert exchange_symmetry_holds(12)
