"""Stokes classification, the Airy oracle, Borel sums and connection checks."""

import cmath
import math

import pytest

from exactwkb.errors import PreconditionError
from exactwkb.resummation import (airy_reference, classify_stokes,
                                  continue_plus_sum_across, formal_solution_partial_sum,
                                  gamma_term, gamma_term_literal, laplace_sum,
                                  verify_airy_connection, verify_voros)

SQRT_PI = math.sqrt(math.pi)


class TestStokesClassification:
    def test_regions(self):
        assert classify_stokes(cmath.exp(-1j * math.pi / 3)).region == "I"
        assert classify_stokes(cmath.exp(1j * math.pi / 3)).region == "II"

    def test_stokes_ray_is_boundary(self):
        assert classify_stokes(1.0).region == "boundary"
        assert classify_stokes(cmath.exp(2j * math.pi / 3)).region == "boundary"

    def test_third_region_is_outside(self):
        assert classify_stokes(-1.0 + 0.2j).region == "outside"
        assert classify_stokes(-1.0).region == "outside"

    def test_turning_point_rejected(self):
        with pytest.raises(PreconditionError):
            classify_stokes(0.0)

    def test_boundary_rejected_by_laplace(self):
        with pytest.raises(PreconditionError):
            laplace_sum("+", classify_stokes(1.0), 5.0)


class TestAiryOracle:
    def test_values_at_zero(self):
        v = airy_reference(0)
        ai0 = 3 ** (-2 / 3) / math.gamma(2 / 3)
        assert abs(v.ai - ai0) < 1e-15
        assert abs(v.bi - math.sqrt(3) * ai0) < 1e-15

    def test_wronskian(self):
        v = airy_reference(1.3)
        w = v.ai * v.bi_prime - v.ai_prime * v.bi
        assert abs(w - 1 / math.pi) < 1e-10

    def test_derivatives_at_zero(self):
        v = airy_reference(0)
        aip0 = -(3 ** (-1 / 3)) / math.gamma(1 / 3)
        assert abs(v.ai_prime - aip0) < 1e-15

    def test_moderate_argument_cancellation_is_controlled(self):
        # |z| ~ 11.7 loses ~20 digits in double precision; the adaptive
        # precision must absorb that.  Cross-check via the Wronskian.
        z = 40 ** (2 / 3) * cmath.exp(-1j * math.pi / 6)
        v = airy_reference(z)
        w = v.ai * v.bi_prime - v.ai_prime * v.bi
        assert abs(w - 1 / math.pi) < 1e-9

    def test_range_guard(self):
        with pytest.raises(PreconditionError):
            airy_reference(50.0)


class TestLaplaceSums:
    def test_error_estimate_below_tolerance(self):
        ctx = classify_stokes(cmath.exp(-1j * math.pi / 6))
        result = laplace_sum("+", ctx, 10.0, 1e-8)
        assert result.quadrature_error_estimate < 1e-8 * abs(result.value)

    def test_tolerance_halving_consistency(self):
        ctx = classify_stokes(cmath.exp(-1j * math.pi / 6))
        loose = laplace_sum("-", ctx, 10.0, 1e-6)
        tight = laplace_sum("-", ctx, 10.0, 5e-7)
        assert abs(loose.value - tight.value) <= max(
            loose.quadrature_error_estimate, 1e-15 * abs(loose.value))

    def test_minus_sum_matches_airy_near_stokes_line(self):
        x = cmath.exp(-1j * math.pi / 60)
        eta = 10.0
        result = laplace_sum("-", classify_stokes(x), eta, 1e-10)
        oracle = airy_reference(eta ** (2 / 3) * x).ai
        prediction = eta ** (1 / 3) * result.value / (2 * SQRT_PI)
        assert abs(prediction - oracle) / abs(oracle) < 1e-8

    def test_eta_scaling_follows_leading_exponential(self):
        x = cmath.exp(-1j * math.pi / 6)
        ctx = classify_stokes(x)
        x32 = cmath.exp(1.5 * cmath.log(x))
        for eta in (20.0, 40.0):
            a = laplace_sum("+", ctx, eta, 1e-10).value
            b = laplace_sum("+", ctx, 2 * eta, 1e-10).value
            model = cmath.exp((2 / 3) * x32 * eta) / math.sqrt(2)
            assert abs(b / a - model) / abs(model) < 0.05

    def test_homogeneity(self):
        x = cmath.exp(-1j * math.pi / 6)
        eta = 10.0
        for lam in (0.8, 1.25):
            for sign in "+-":
                scaled = laplace_sum(sign, classify_stokes(lam * lam * x),
                                     eta / lam ** 3, 1e-12).value
                base = laplace_sum(sign, classify_stokes(x), eta, 1e-12).value
                assert abs(scaled - lam * base) / abs(lam * base) < 1e-10


class TestConnectionFormulas:
    def test_airy_link_region_I(self):
        report = verify_airy_connection(cmath.exp(-1j * math.pi / 6), 10.0, tol=1e-6)
        assert report.region == "I"
        assert report.passed
        assert report.max_residual < 1e-9

    def test_airy_link_region_II_variant(self):
        report = verify_airy_connection(cmath.exp(1j * math.pi / 6), 8.0, tol=1e-6)
        assert report.region == "II"
        assert report.passed

    def test_voros_jump(self):
        report = verify_voros(cmath.exp(1j * math.pi / 6), 8.0)
        assert report.plus_residual < 1e-6
        assert report.minus_residual < 1e-8
        assert report.cut_vs_jump_residual < 1e-6

    def test_cut_term_equals_jump(self):
        ctx = classify_stokes(cmath.exp(1j * math.pi / 6))
        cut = gamma_term(ctx, 8.0).value
        minus = laplace_sum("-", ctx, 8.0, 1e-10).value
        assert abs(cut - 1j * minus) / abs(minus) < 1e-6

    def test_literal_loop_cross_check(self):
        ctx = classify_stokes(cmath.exp(1j * math.pi / 6))
        literal = gamma_term_literal(ctx, 8.0)
        reduced = gamma_term(ctx, 8.0).value
        assert abs(literal - reduced) / abs(reduced) < 5e-3

    def test_continued_sum_flag_equivalence(self):
        ctx = classify_stokes(cmath.exp(1j * math.pi / 6))
        by_delta, cut_delta = continue_plus_sum_across(ctx, 8.0)
        by_literal, cut_literal = continue_plus_sum_across(ctx, 8.0, literal_loop=True)
        assert abs(cut_delta - cut_literal) / abs(cut_delta) < 5e-3
        assert abs(by_delta.value - by_literal.value) / abs(by_delta.value) < 1e-5

    def test_region_I_input_rejected_for_continuation(self):
        with pytest.raises(PreconditionError):
            continue_plus_sum_across(classify_stokes(cmath.exp(-1j * math.pi / 6)), 8.0)


class TestWatsonConsistency:
    def test_partial_sums_track_first_omitted_term(self):
        from exactwkb.airy_wkb import closed_form_coefficients
        x = cmath.exp(-1j * math.pi / 6)
        x32 = cmath.exp(1.5 * cmath.log(x))
        for eta in (10.0, 20.0, 40.0):
            full = laplace_sum("-", classify_stokes(x), eta, 1e-12).value
            for n_terms in (3, 6):
                partial = formal_solution_partial_sum("-", x, eta, n_terms)
                c = closed_form_coefficients(n_terms, "-")[n_terms]
                omitted = abs(float(c) * (1 / (eta * x32)) ** n_terms
                              * eta ** -0.5 * cmath.exp(-0.25 * cmath.log(x))
                              * cmath.exp(-(2 / 3) * x32 * eta))
                ratio = abs(full - partial) / omitted
                assert 0.05 < ratio < 20
