"""Tests for the special functions, parabolic cylinder functions and quadrature."""

import math

import mpmath
import pytest
from numpy.testing import assert_allclose

from src.models import (
    ConvergenceError,
    DivergenceError,
    DomainError,
    HypParams,
    InvalidSpecError,
    PoleError,
    QuadShape,
    QuadSpec,
    RangeError,
)
from src.algorithms.specfun import (
    beta,
    bessel_I,
    bessel_K,
    digamma,
    elliptic_K,
    erfc,
    f21,
    gamma,
    gauss_2f1,
    gauss_2f1_near_unity,
    hyp2f1_quadratic_residual,
    incomplete_beta,
    kummer_phi,
    legendre_P,
    legendre_P_equal,
    rgamma,
)
from src.algorithms.pcf import pcf_D, pcf_sum_residuals
from src.algorithms.quadrature import integrate, integrate_split
from tests.fixtures.test_data import (
    ELLIPTIC_K_HALF,
    ERFC_AT_ONE,
    E_MINUS_ONE,
    GAMMA_VALUES,
    GAUSS_CLOSED_FORMS,
    INCOMPLETE_BETA_VALUES,
    PCF_BESSEL_ARGUMENTS,
    PCF_ERFC_ARGUMENTS,
    PCF_VALUES,
    RGAMMA_ZEROS,
    SQRT_PI,
)


# ----------------------------------------------------------------
# gamma family

class TestGamma:

    @pytest.mark.parametrize("x, expected", GAMMA_VALUES)
    def test_closed_forms(self, x, expected):
        assert gamma(x) == pytest.approx(expected, rel=1e-14)

    def test_against_mpmath(self):
        assert gamma(3.7) == pytest.approx(float(mpmath.gamma(3.7)), rel=1e-14)
        assert gamma(-0.5) == pytest.approx(-2.0 * SQRT_PI, rel=1e-14)

    def test_pole_raises(self):
        with pytest.raises(PoleError):
            gamma(-2.0)

    @pytest.mark.parametrize("x", RGAMMA_ZEROS)
    def test_rgamma_is_zero_at_poles(self, x):
        assert rgamma(x) == 0.0

    def test_rgamma_one(self):
        assert rgamma(1.0) == pytest.approx(1.0, rel=1e-15)

    def test_digamma(self):
        assert digamma(1.0) == pytest.approx(-0.5772156649015329, rel=1e-13)
        with pytest.raises(PoleError):
            digamma(-3.0)

    def test_beta(self):
        assert beta(2.0, 2.0) == pytest.approx(1.0 / 6.0, rel=1e-14)
        with pytest.raises(DomainError):
            beta(-0.5, 1.0)


class TestErfc:

    def test_values(self):
        assert erfc(0.0) == 1.0
        assert erfc(1.0) == pytest.approx(ERFC_AT_ONE, rel=1e-14)

    def test_reflection(self):
        assert erfc(-0.8) == pytest.approx(2.0 - erfc(0.8), rel=1e-15)


# ----------------------------------------------------------------
# Kummer

class TestKummer:

    def test_zero_argument(self):
        assert kummer_phi(-0.3, 1.5, 0.0).value == 1.0

    def test_exponential_form(self):
        assert kummer_phi(1.0, 2.0, 1.0).value == pytest.approx(E_MINUS_ONE, rel=1e-14)

    def test_against_mpmath(self):
        expected = float(mpmath.hyp1f1(-0.25, 0.5, 2))
        assert kummer_phi(-0.25, 0.5, 2.0).value == pytest.approx(expected, rel=1e-13)

    @pytest.mark.parametrize("a", [-0.9, -0.3, 0.4])
    @pytest.mark.parametrize("b", [0.5, 1.5])
    @pytest.mark.parametrize("z", [0.5, 2.0, 10.0])
    def test_kummer_transformation(self, a, b, z):
        lhs = kummer_phi(a, b, z).value
        rhs = math.exp(z) * kummer_phi(b - a, b, -z).value
        assert abs(lhs - rhs) <= 1e-10 * abs(lhs)

    def test_pole_parameter(self):
        with pytest.raises(PoleError):
            kummer_phi(0.5, -1.0, 1.0)

    def test_argument_range(self):
        with pytest.raises(DomainError):
            kummer_phi(0.5, 1.5, 250.0)

    def test_budget_exhaustion_reports_estimate(self):
        with pytest.raises(ConvergenceError) as info:
            kummer_phi(0.5, 1.5, 100.0, max_terms=5)
        assert info.value.estimate is not None


# ----------------------------------------------------------------
# Gauss

class TestGauss2F1:

    @pytest.mark.parametrize("a, b, c, z, expected", GAUSS_CLOSED_FORMS)
    def test_closed_forms(self, a, b, c, z, expected):
        assert gauss_2f1(HypParams(a, b, c, z)).value == pytest.approx(expected, rel=1e-13)

    @pytest.mark.parametrize("params", [
        HypParams(0.3, -0.7, 1.2, 0.4),
        HypParams(0.25, 1.5, 2.2, -3.0),
        HypParams(-0.4, 0.6, 0.9, 0.8),
    ])
    def test_symmetry_is_exact(self, params):
        assert gauss_2f1(params).value == gauss_2f1(params.swapped()).value

    @pytest.mark.parametrize("a, b, c", [
        (0.3, 0.6, 1.4), (-0.25, 0.5, 1.2), (0.75, -0.4, 0.9), (1.2, 0.3, 2.1), (0.5, 0.5, 1.5),
    ])
    def test_linear_transformations(self, a, b, c):
        z = 0.3
        direct = f21(a, b, c, z)[0]
        euler = (1 - z) ** (c - a - b) * f21(c - a, c - b, c, z)[0]
        pfaff_a = (1 - z) ** -a * f21(a, c - b, c, z / (z - 1))[0]
        pfaff_b = (1 - z) ** -b * f21(b, c - a, c, z / (z - 1))[0]
        assert_allclose([euler, pfaff_a, pfaff_b], direct, rtol=1e-11)

    @pytest.mark.parametrize("a, b", [(-0.2, 0.3), (0.25, 0.25)])
    @pytest.mark.parametrize("z", [0.1, 0.5, 0.9])
    def test_quadratic_transformation(self, a, b, z):
        lhs = f21(a, b, a + b + 0.5, z)[0]
        assert abs(hyp2f1_quadratic_residual(a, b, z)) <= 1e-10 * abs(lhs)

    @pytest.mark.parametrize("a, b, z", [
        (0.3, 0.7, 0.4), (-0.5, 0.25, 0.8), (0.6, 1.5, 0.2), (0.1, 0.9, 0.65), (-1.2, 0.4, 0.5),
    ])
    def test_incomplete_beta_special_case(self, a, b, z):
        lhs = f21(a, b, b + 1.0, z)[0]
        rhs = b * z ** -b * incomplete_beta(z, b, 1.0 - a)
        assert lhs == pytest.approx(rhs, rel=1e-10)

    @pytest.mark.parametrize("m", [0.3, 0.7, 0.95])
    def test_elliptic_special_case(self, m):
        assert f21(0.5, 0.5, 1.0, m)[0] == pytest.approx(2.0 / math.pi * elliptic_K(m), rel=1e-12)

    @pytest.mark.parametrize("z", [0.2, 0.5, 0.9])
    def test_arcsine_special_case(self, z):
        assert f21(0.5, 0.5, 1.5, z * z)[0] == pytest.approx(math.asin(z) / z, rel=1e-13)

    @pytest.mark.parametrize("a, b, c", [
        (0.3, 0.2, 1.0), (-0.25, -0.3, 0.775), (1.0, 0.5, 2.0),
    ])
    def test_unit_argument(self, a, b, c):
        expected = gamma(c) * gamma(c - a - b) / (gamma(c - a) * gamma(c - b))
        assert gauss_2f1(HypParams(a, b, c, 1.0), 0.0).value == pytest.approx(expected, rel=1e-12)

    def test_unit_argument_diverges(self):
        with pytest.raises(DivergenceError):
            gauss_2f1(HypParams(0.75, 0.5, 1.0, 1.0), 0.0)

    def test_pole_in_c(self):
        with pytest.raises(PoleError):
            gauss_2f1(HypParams(0.5, 0.5, -2.0, 0.3))

    def test_above_one(self):
        with pytest.raises(DomainError):
            gauss_2f1(HypParams(0.5, 0.5, 1.5, 1.5))


class TestGaussNearUnity:

    def test_zero_argument(self):
        assert gauss_2f1_near_unity(HypParams(0.3, 0.4, 1.5, 0.0), 1.0).value == pytest.approx(1.0)

    def test_continuity_at_one(self):
        p = HypParams(-0.25, -0.3, 0.775, 1.0)
        near = gauss_2f1_near_unity(p, 1e-12).value
        at_one = gauss_2f1(p, 0.0).value
        assert near == pytest.approx(at_one, rel=1e-9)

    def test_against_mpmath(self):
        expected = float(mpmath.hyp2f1(0.6, 0.7, 1.55, mpmath.mpf(99) / 100))
        value = gauss_2f1_near_unity(HypParams(0.6, 0.7, 1.55, 0.99), 0.01).value
        assert value == pytest.approx(expected, rel=1e-12)

    # integer c - a - b uses the logarithmic connection formulas
    @pytest.mark.parametrize("a, b, c", [
        (0.25, 0.75, 2.0),
        (0.25, 0.75, 3.0),
        (0.25, 0.75, 4.0),
        (1.25, 1.75, 1.0),
    ])
    def test_integer_exponent_gap(self, a, b, c):
        expected = float(mpmath.hyp2f1(a, b, c, mpmath.mpf(9) / 10))
        value = gauss_2f1_near_unity(HypParams(a, b, c, 0.9), 0.1).value
        assert value == pytest.approx(expected, rel=1e-11)
        assert gauss_2f1(HypParams(a, b, c, 0.9), 0.1).value == pytest.approx(expected, rel=1e-11)

    def test_complement_outside_range(self):
        with pytest.raises(DomainError):
            gauss_2f1_near_unity(HypParams(0.3, 0.4, 1.5, 0.0), 1.5)


# ----------------------------------------------------------------
# Beta, elliptic, Legendre, Bessel

class TestIncompleteBeta:

    @pytest.mark.parametrize("z, a, b, expected", INCOMPLETE_BETA_VALUES)
    def test_closed_forms(self, z, a, b, expected):
        assert incomplete_beta(z, a, b) == pytest.approx(expected, rel=1e-13)

    def test_reflected_branch_matches_mpmath(self):
        expected = float(mpmath.betainc(0.7, 1.3, 0, 0.85))
        assert incomplete_beta(0.85, 0.7, 1.3) == pytest.approx(expected, rel=1e-12)

    def test_domain(self):
        with pytest.raises(DomainError):
            incomplete_beta(1.5, 1.0, 1.0)


class TestEllipticK:

    def test_values(self):
        assert elliptic_K(0.0) == pytest.approx(0.5 * math.pi, rel=1e-15)
        assert elliptic_K(0.5) == pytest.approx(ELLIPTIC_K_HALF, rel=1e-14)

    def test_near_one_with_complement(self):
        expected = float(mpmath.ellipk(1 - mpmath.mpf(10) ** -6))
        assert elliptic_K(0.999999, 1e-6) == pytest.approx(expected, rel=1e-10)

    def test_domain(self):
        with pytest.raises(DomainError):
            elliptic_K(1.0)


class TestLegendre:

    def test_degree_zero(self):
        assert legendre_P(0.0, 0.0, 0.3) == pytest.approx(1.0, rel=1e-15)

    def test_degree_one(self):
        assert legendre_P(1.0, 0.0, -0.6) == pytest.approx(-0.6, rel=1e-14)

    def test_against_mpmath(self):
        expected = float(mpmath.legenp(-0.25, 0.35, 0.5, type=2))
        assert legendre_P(-0.25, 0.35, 0.5) == pytest.approx(expected, rel=1e-12)

    @pytest.mark.parametrize("nu, x", [(-0.5, 0.0), (-0.5, 0.9), (-1.3, -0.4)])
    def test_equal_degree_order_reduction(self, nu, x):
        assert legendre_P_equal(nu, x) == pytest.approx(legendre_P(nu, nu, x), rel=1e-11)

    def test_equal_minus_one(self):
        assert legendre_P_equal(-1.0, 0.5) == pytest.approx(2.0 * 0.25 / math.sqrt(0.75), rel=1e-13)

    @pytest.mark.parametrize("x", [0.1, 0.5, 0.9])
    def test_sqrt_argument_special_case(self, x):
        a, b = 0.3, 0.1
        lhs = f21(a, b, a + b + 0.5, x)[0]
        rhs = (2.0 ** (a + b - 0.5) * gamma(a + b + 0.5) * x ** (0.25 * (1 - 2 * a - 2 * b))
               * legendre_P(a - b - 0.5, 0.5 - a - b, math.sqrt(1 - x)))
        assert lhs == pytest.approx(rhs, rel=1e-9)

    @pytest.mark.parametrize("x", [0.1, 0.5, 0.9])
    def test_odd_difference_special_case(self, x):
        a, b = 0.3, 0.7
        r = math.sqrt(x)
        order, degree = 1.5 - a - b, a - b - 0.5
        rhs = (-2.0 ** (a + b - 3.5) / SQRT_PI * gamma(a - 0.5) * gamma(b - 0.5) / r
               * (1 - x) ** (0.25 * (3 - 2 * a - 2 * b))
               * (legendre_P(degree, order, r, 1 - r, 1 + r)
                  - legendre_P(degree, order, -r, 1 + r, 1 - r)))
        assert f21(a, b, 1.5, x)[0] == pytest.approx(rhs, rel=1e-9)

    @pytest.mark.parametrize("b", [0.75, 1.25])
    @pytest.mark.parametrize("x", [0.2, 0.6])
    def test_beta_difference_form(self, b, x):
        r = math.sqrt(x)
        h = b - 0.5
        rhs = (2.0 ** (2 * b - 3) / r * (1 - x) ** (0.5 * (1 - 2 * b))
               * (incomplete_beta(0.5 * (1 + r), h, h, 0.5 * (1 - r))
                  - incomplete_beta(0.5 * (1 - r), h, h, 0.5 * (1 + r))))
        assert f21(1.0, b, 1.5, x)[0] == pytest.approx(rhs, rel=1e-9)

    def test_complements_decide_the_domain(self):
        # x rounds below -1 while 1 + x stays positive
        assert legendre_P(0.0, 0.0, -1.0000000000000004, one_minus_x=2.0 - 4e-16,
                          one_plus_x=4e-16) == pytest.approx(1.0, rel=1e-15)
        assert legendre_P(1.0, 0.0, -1.0000000000000004, one_minus_x=2.0 - 4e-16,
                          one_plus_x=4e-16) == pytest.approx(-1.0 + 4e-16, rel=1e-14)

    def test_domain(self):
        with pytest.raises(DomainError):
            legendre_P(0.5, 0.2, 1.0)
        with pytest.raises(DomainError):
            legendre_P_equal(0.5, 0.3)


class TestBessel:

    def test_small_argument(self):
        z = 1e-8
        assert bessel_I(0.25, z) * gamma(1.25) * (2.0 / z) ** 0.25 == pytest.approx(1.0, abs=1e-8)

    def test_kummer_relation(self):
        lhs = kummer_phi(0.75, 1.5, 2.0).value
        rhs = gamma(1.25) * 0.5 ** -0.25 * math.e * bessel_I(0.25, 1.0)
        assert abs(lhs - rhs) <= 1e-11

    def test_against_mpmath(self):
        assert bessel_I(0.25, 1.0) == pytest.approx(float(mpmath.besseli(0.25, 1)), rel=1e-13)
        assert bessel_K(0.25, 1.0) == pytest.approx(float(mpmath.besselk(0.25, 1)), rel=1e-12)

    def test_domain(self):
        with pytest.raises(DomainError):
            bessel_I(0.25, -1.0)
        with pytest.raises(DomainError):
            bessel_K(0.25, 0.0)


# ----------------------------------------------------------------
# Parabolic cylinder functions

class TestPcf:

    @pytest.mark.parametrize("nu, z, expected", PCF_VALUES)
    def test_closed_forms(self, nu, z, expected):
        assert pcf_D(nu, z).value == pytest.approx(expected, rel=1e-13)

    @pytest.mark.parametrize("z", PCF_BESSEL_ARGUMENTS + [1.3])
    def test_minus_half_order(self, z):
        lhs = pcf_D(-0.5, z).value
        rhs = math.sqrt(z / (2.0 * math.pi)) * bessel_K(0.25, 0.25 * z * z)
        assert abs(lhs - rhs) <= 1e-10 * abs(lhs)

    @pytest.mark.parametrize("z", PCF_ERFC_ARGUMENTS)
    def test_minus_one_order(self, z):
        result = pcf_D(-1.0, z)
        rhs = math.exp(0.25 * z * z) * math.sqrt(0.5 * math.pi) * erfc(z / math.sqrt(2.0))
        assert abs(result.value - rhs) <= max(1e-10 * abs(rhs), 2.0 * result.abs_err_est)

    @pytest.mark.parametrize("nu, z", [(-0.3, 1.0), (-1.7, 4.0), (0.6, -2.5), (-0.2, 6.0)])
    def test_against_mpmath(self, nu, z):
        result = pcf_D(nu, z)
        expected = float(mpmath.pcfd(nu, z))
        assert abs(result.value - expected) <= max(1e-12 * abs(expected), 2.0 * result.abs_err_est)

    @pytest.mark.parametrize("nu, z", [(-0.5, 0.0), (-1.2, 0.8), (-2.0, 1.0)])
    def test_sum_and_difference(self, nu, z):
        scale = abs(pcf_D(nu, z).value) + abs(pcf_D(nu, -z).value)
        sum_res, diff_res = pcf_sum_residuals(nu, z)
        assert abs(sum_res) <= 1e-10 * scale
        assert abs(diff_res) <= 1e-10 * scale

    def test_difference_vanishes_at_zero(self):
        _, diff_res = pcf_sum_residuals(-0.5, 0.0)
        assert diff_res == pytest.approx(0.0, abs=1e-15)

    def test_envelope(self):
        with pytest.raises(RangeError):
            pcf_D(-0.5, 31.0)
        with pytest.raises(RangeError):
            pcf_D(-11.0, 1.0)


# ----------------------------------------------------------------
# Quadrature

def _spec(shape, lower, upper, alpha, g, beta_=0.0, **kwargs):
    return QuadSpec(shape=shape, lower=lower, upper=upper, left_exponent=alpha,
                    right_exponent=beta_, smooth_factor=g, **kwargs)


def _one(t, left, right):
    return 1.0


EXPONENTS = [-0.9, -0.5, 0.0, 0.7]


class TestQuadrature:

    @pytest.mark.parametrize("alpha", EXPONENTS)
    def test_gamma_integrals(self, alpha):
        outcome = integrate(_spec(QuadShape.SEMI_INFINITE, 0.0, math.inf, alpha, _one))
        assert outcome.converged
        assert outcome.value == pytest.approx(math.gamma(alpha + 1.0), rel=1e-10)

    @pytest.mark.parametrize("alpha", EXPONENTS)
    @pytest.mark.parametrize("beta_", EXPONENTS)
    def test_beta_integrals(self, alpha, beta_):
        outcome = integrate(_spec(QuadShape.FINITE, 0.0, 1.0, alpha, _one, beta_))
        assert outcome.converged
        assert outcome.value == pytest.approx(beta(alpha + 1.0, beta_ + 1.0), rel=1e-10)

    def test_shifted_semi_infinite(self):
        # int_2^inf e^{-t} dt = e^{-2}
        outcome = integrate(_spec(QuadShape.SEMI_INFINITE, 2.0, math.inf, 0.0, _one))
        assert outcome.value == pytest.approx(math.exp(-2.0), rel=1e-10)

    def test_distances_are_exact(self):
        seen = []

        def g(t, left, right):
            seen.append((t, left, right))
            return 1.0

        integrate(_spec(QuadShape.FINITE, 1.0, 3.0, 0.0, g))
        for t, left, right in seen:
            assert left > 0 and right > 0
            assert left + right == pytest.approx(2.0, rel=1e-15)

    def test_split_additivity(self):
        outcome = integrate_split(
            _spec(QuadShape.FINITE, 0.0, 1.0, 0.0, lambda t, l, r: math.exp(-t)),
            _spec(QuadShape.SEMI_INFINITE, 1.0, math.inf, 0.0, _one),
        )
        assert outcome.value == pytest.approx(1.0, rel=1e-10)

    def test_split_sqrt_pi(self):
        outcome = integrate_split(
            _spec(QuadShape.FINITE, 0.0, 0.5, -0.5, lambda t, l, r: math.exp(-t)),
            _spec(QuadShape.SEMI_INFINITE, 0.5, math.inf, 0.0, lambda t, l, r: t ** -0.5),
        )
        assert outcome.value == pytest.approx(SQRT_PI, rel=1e-10)

    def test_split_must_meet(self):
        with pytest.raises(InvalidSpecError):
            integrate_split(
                _spec(QuadShape.FINITE, 0.0, 1.0, 0.0, _one),
                _spec(QuadShape.SEMI_INFINITE, 2.0, math.inf, 0.0, _one),
            )

    def test_tighter_tolerance_never_loses_accuracy(self):
        def g(t, left, right):
            return math.exp(-t) * math.cos(3.0 * t)

        with mpmath.workdps(30):
            reference = float(mpmath.quad(
                lambda t: t ** -0.5 * (1 - t) ** 0.7 * mpmath.exp(-t) * mpmath.cos(3 * t), [0, 1]))
        rel_tol = 1e-3
        previous = math.inf
        for _ in range(12):
            outcome = integrate(_spec(QuadShape.FINITE, 0.0, 1.0, -0.5, g, 0.7, rel_tol=rel_tol))
            error = abs(outcome.value - reference)
            assert error <= previous + 1e-15 * abs(reference)
            previous = error
            rel_tol *= 0.5

    def test_budget_exhaustion_is_reported(self):
        outcome = integrate(_spec(QuadShape.FINITE, 0.0, 1.0, 0.0,
                                  lambda t, l, r: math.sin(200.0 * t), max_evals=20))
        assert not outcome.converged

    @pytest.mark.parametrize("kwargs", [
        dict(shape=QuadShape.FINITE, lower=0.0, upper=1.0, left_exponent=-1.0),
        dict(shape=QuadShape.FINITE, lower=1.0, upper=1.0, left_exponent=0.0),
        dict(shape=QuadShape.SEMI_INFINITE, lower=0.0, upper=5.0, left_exponent=0.0),
        dict(shape=QuadShape.FINITE, lower=0.0, upper=1.0, left_exponent=0.0, right_exponent=-1.5),
    ])
    def test_invalid_specs(self, kwargs):
        with pytest.raises(InvalidSpecError):
            QuadSpec(smooth_factor=_one, **kwargs)
