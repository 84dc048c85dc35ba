import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import gamma as scipy_gamma
from scipy.special import ive

from confract.specfun import (
    BESSEL_CROSSOVER,
    bessel_i,
    bessel_i_asymptotic,
    bessel_i_scaled,
    bessel_i_series,
    gamma,
)


class TestGamma:
    def test_factorials(self):
        assert math.isclose(gamma(1.0), 1.0, rel_tol=1e-13)
        assert math.isclose(gamma(5.0), 24.0, rel_tol=1e-13)

    def test_half_integer(self):
        assert math.isclose(gamma(0.5), math.sqrt(math.pi), rel_tol=1e-14)

    @pytest.mark.parametrize("x", [-9.5, -3.3, -0.7, 0.1, 0.9, 2.5, 33.7, 100.2, 170.0])
    def test_against_scipy(self, x):
        assert math.isclose(gamma(x), float(scipy_gamma(x)), rel_tol=1e-12)

    @given(st.floats(min_value=0.5, max_value=50.0))
    @settings(max_examples=200, deadline=None)
    def test_functional_equation(self, x):
        assert math.isclose(gamma(x + 1.0), x * gamma(x), rel_tol=1e-12)

    @pytest.mark.parametrize("x", [0.0, -1.0, -7.0])
    def test_poles(self, x):
        with pytest.raises(ValueError):
            gamma(x)

    def test_overflow(self):
        with pytest.raises(OverflowError):
            gamma(172.0)


class TestBesselI:
    def test_at_zero(self):
        assert bessel_i(0.0, 0.0) == 1.0
        assert bessel_i(2.0, 0.0) == 0.0

    @pytest.mark.parametrize("z", [0.1, 1.0, 5.0, 20.0])
    def test_half_order_closed_form(self, z):
        exact = math.sqrt(2.0 / (math.pi * z)) * math.sinh(z)
        assert math.isclose(bessel_i(0.5, z), exact, rel_tol=1e-10)

    def test_series_vs_asymptotic_at_crossover(self):
        for nu in (0.0, 1.3, 3.0):
            for z in (25.0, 28.0, BESSEL_CROSSOVER, 33.0, 36.0):
                a = bessel_i_series(nu, z)
                b = bessel_i_asymptotic(nu, z)
                assert math.isclose(a, b, rel_tol=1e-9)

    @given(
        st.floats(min_value=0.1, max_value=5.0),
        st.floats(min_value=0.1, max_value=50.0),
    )
    @settings(max_examples=150, deadline=None)
    def test_recurrence(self, nu, z):
        lhs = bessel_i(nu - 1.0, z) - bessel_i(nu + 1.0, z)
        rhs = (2.0 * nu / z) * bessel_i(nu, z)
        assert math.isclose(lhs, rhs, rel_tol=1e-8)

    @pytest.mark.parametrize("nu", [0.0, 0.5, 2.0, 4.5])
    def test_monotone_in_argument(self, nu):
        zs = [0.1 * k for k in range(1, 120)]
        vals = [bessel_i(nu, z) for z in zs]
        assert all(a < b for a, b in zip(vals, vals[1:]))

    @pytest.mark.parametrize(
        "nu,z", [(-0.5, 0.3), (0.0, 1.0), (1.3, 25.0), (2.0, 80.0), (3.0, 700.0)]
    )
    def test_scaled_against_scipy(self, nu, z):
        assert math.isclose(bessel_i_scaled(nu, z), float(ive(nu, z)), rel_tol=1e-10)

    def test_negative_one_order_equals_plus_one(self):
        assert math.isclose(bessel_i(-1.0, 2.3), bessel_i(1.0, 2.3), rel_tol=1e-14)

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            bessel_i(0.0, -1.0)
        with pytest.raises(ValueError):
            bessel_i(-1.5, 1.0)

    def test_overflow_signal(self):
        with pytest.raises(OverflowError):
            bessel_i(0.0, 800.0)
        # the scaled path stays finite there
        assert bessel_i_scaled(0.0, 800.0) > 0.0
