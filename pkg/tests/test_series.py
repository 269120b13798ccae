"""Exact arithmetic substrate: scalars, Puiseux series, eta-expansions."""

from fractions import Fraction as Fr

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from exactwkb.errors import PreconditionError
from exactwkb.series import (EtaExpansion, ExactScalar, PuiseuxSeries,
                             series_arith, series_compose_exp_sqrt)

P = PuiseuxSeries


class TestExactScalar:
    def test_sqrt3_squares_to_three(self):
        assert ExactScalar.sqrt3() * ExactScalar.sqrt3() == ExactScalar(3)

    def test_field_inverse(self):
        z = ExactScalar(Fr(2, 3), Fr(-1, 5))
        assert z * z.inverse() == ExactScalar(1)

    def test_exact_equality_no_floats(self):
        assert ExactScalar(Fr(1, 3)) + ExactScalar(Fr(1, 3)) == ExactScalar(Fr(2, 3))
        assert ExactScalar(Fr(1, 3)) != ExactScalar(Fr(333333333, 1000000000))

    @pytest.mark.parametrize("value,root", [
        (ExactScalar(Fr(1, 4)), ExactScalar(Fr(1, 2))),
        (ExactScalar(3), ExactScalar.sqrt3()),
        (ExactScalar(Fr(3, 16)), ExactScalar.sqrt3(Fr(1, 4))),
        (ExactScalar(7, 4) * ExactScalar(7, 4), ExactScalar(7, 4)),
    ])
    def test_perfect_square_roots(self, value, root):
        assert value.sqrt() * value.sqrt() == value
        assert value.sqrt() in (root, -root)

    def test_non_square_rejected(self):
        with pytest.raises(PreconditionError):
            ExactScalar(2).sqrt()

    def test_square_with_negative_irrational_part(self):
        value = ExactScalar(7, -4)  # (2 - sqrt 3)^2
        root = value.sqrt()
        assert root * root == value
        assert root in (ExactScalar(2, -1), ExactScalar(-2, 1))


class TestPuiseuxArithmetic:
    def test_difference_of_squares(self):
        one_plus = P("s", {Fr(0): 1, Fr(1): 1})
        one_minus = P("s", {Fr(0): 1, Fr(1): -1})
        assert series_arith(one_plus, one_minus, "mul") == P("s", {Fr(0): 1, Fr(2): -1})

    def test_geometric_inverse(self):
        one_plus = P("s", {Fr(0): 1, Fr(1): 1}, Fr(3))
        inv = series_arith(P.one("s", Fr(3)), one_plus, "div")
        assert inv == P("s", {Fr(0): 1, Fr(1): -1, Fr(2): 1}, Fr(3))

    def test_half_power_leading_parts_add(self):
        a = P("s", {Fr(0): ExactScalar.sqrt3(Fr(1, 4)), Fr(1, 2): Fr(1, 6)})
        b = P("s", {Fr(0): ExactScalar.sqrt3(Fr(-1, 4)), Fr(1, 2): Fr(1, 6)})
        assert series_arith(a, b, "add") == P("s", {Fr(1, 2): Fr(1, 3)})

    def test_variable_mismatch_rejected(self):
        with pytest.raises(PreconditionError):
            series_arith(P.one("s"), P.one("u"), "add")

    def test_division_by_zero_series(self):
        with pytest.raises(ZeroDivisionError):
            series_arith(P.one("s", 2), P.zero("s", 2), "div")

    def test_quarter_exponents_rejected(self):
        with pytest.raises(PreconditionError):
            P("s", {Fr(1, 4): 1})

    def test_truncation_propagates_through_mul(self):
        f = P("s", {Fr(1, 2): 1}, Fr(3))       # known through s^(5/2)
        g = P("s", {Fr(1): 1}, Fr(2))          # known through s^(3/2)
        assert (f * g).truncation == Fr(5, 2)  # min(3 + 1, 2 + 1/2)

    def test_inverse_shifts_truncation_by_valuation(self):
        f = P("s", {Fr(1): 1, Fr(2): 1}, Fr(4))
        inv = f.inverse()
        assert inv.truncation == Fr(2)         # relative precision 3, valuation 1
        assert (f * inv).coeff(0) == ExactScalar(1)


class TestCompositions:
    def test_exp(self):
        s = P.monomial("s", 1)
        assert series_compose_exp_sqrt(s, "exp", order=3) == \
            P("s", {Fr(0): 1, Fr(1): 1, Fr(2): Fr(1, 2)}, Fr(3))

    def test_inv_sqrt(self):
        one_plus = P("s", {Fr(0): 1, Fr(1): 1})
        assert series_compose_exp_sqrt(one_plus, "inv_sqrt", order=2) == \
            P("s", {Fr(0): 1, Fr(1): Fr(-1, 2)}, Fr(2))

    def test_log1p_inverts_expm1(self):
        s = P.monomial("s", Fr(1, 2))
        expanded = s.exp(order=5) - 1
        assert expanded.log1p().same_terms(s.truncate(5))

    def test_exp_requires_positive_valuation(self):
        with pytest.raises(PreconditionError):
            P.one("s", 3).exp()

    def test_eta_expansion_exp(self):
        e = EtaExpansion({1: P.monomial("x", Fr(-3, 2), Fr(5, 48))}, 2)
        result = e.exp()
        assert result.coeff(0) == P.one("x")
        assert result.coeff(1) == P.monomial("x", Fr(-3, 2), Fr(5, 48))
        assert result.coeff(2) == P.monomial("x", Fr(-3), Fr(25, 4608))


def small_scalars():
    fractions = st.fractions(min_value=-3, max_value=3, max_denominator=6)
    return st.builds(ExactScalar, fractions, fractions)


def small_series():
    exponents = st.integers(min_value=-4, max_value=8).map(lambda k: Fr(k, 2))
    term = st.tuples(exponents, small_scalars())
    return st.lists(term, min_size=0, max_size=4).map(
        lambda terms: P("s", terms, Fr(5)))


class TestRingAxioms:
    @settings(max_examples=60, deadline=None)
    @given(small_series(), small_series(), small_series())
    def test_associativity_and_distributivity(self, a, b, c):
        assert ((a * b) * c).same_terms(a * (b * c))
        assert (a * (b + c)).same_terms(a * b + a * c)

    @settings(max_examples=40, deadline=None)
    @given(small_series())
    def test_mul_then_div_by_unit_is_identity(self, a):
        unit = P("s", {Fr(0): 1, Fr(1, 2): Fr(1, 3)}, Fr(5))
        round_trip = (a * unit) / unit
        assert round_trip.same_terms(a.truncate(round_trip.truncation)
                                     if round_trip.truncation is not None else a)

    @settings(max_examples=60, deadline=None)
    @given(small_series(), small_series())
    def test_exponent_denominators_stay_in_half_integers(self, a, b):
        for e in (a * b).terms:
            assert e.denominator in (1, 2)


class TestCalculus:
    def test_termwise_primitive(self):
        f = P("x", {Fr(1, 2): 1, Fr(-5, 2): Fr(-5, 32)})
        prim = f.integrate()
        assert prim.coeff(Fr(3, 2)) == Fr(2, 3)
        assert prim.coeff(Fr(-3, 2)) == Fr(5, 48)

    def test_exponent_minus_one_cannot_be_integrated(self):
        with pytest.raises(PreconditionError):
            P("x", {Fr(-1): 1}).integrate()

    def test_derivative_then_primitive_round_trip(self):
        f = P("x", {Fr(1, 2): 1, Fr(2): Fr(3, 7)})
        assert f.differentiate().integrate() == f


class TestSerialization:
    def test_json_round_trip(self):
        f = P("s", {Fr(-1, 2): ExactScalar.sqrt3(Fr(1, 4)), Fr(1): Fr(-5, 18)}, Fr(7, 2))
        data = f.to_json()
        assert data["variable"] == "s"
        assert PuiseuxSeries.from_json(data) == f

    def test_json_schema_shape(self):
        f = P("s", {Fr(1, 2): Fr(1, 3)}, 2)
        data = f.to_json()
        assert data["terms"] == [[1, 2, 1, 3, 0, 1]]
        assert data["truncation"] == [2, 1]
