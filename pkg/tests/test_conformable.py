import math

import pytest

from confract.conformable import (
    EvalPoint,
    SolutionPair,
    conformable_derivative,
    constant_pair,
    residual,
    scaled_residual,
)
from confract.systems import make_example31


class TestOperator:
    def test_power_rule_example(self):
        # f = t^2, alpha = 1/2, t = 4: 2 * 4^(3/2) = 16
        got = conformable_derivative(lambda t: t * t, 4.0, 0.5)
        assert math.isclose(got, 16.0, rel_tol=1e-9)

    def test_constant(self):
        assert conformable_derivative(lambda t: 7.0, 1.7, 0.3) == 0.0

    def test_classical_limit(self):
        got = conformable_derivative(math.sin, 1.0, 1.0)
        assert math.isclose(got, math.cos(1.0), rel_tol=1e-9)

    def test_classical_weight_is_exactly_one(self):
        # at alpha = 1 the operator must be the plain stencil: t^0 == 1 bitwise
        f = lambda t: t**3  # noqa: E731
        h = 1e-5 * 2.0
        plain = (f(2.0 + h) - f(2.0 - h)) / (2.0 * h)
        assert conformable_derivative(f, 2.0, 1.0) == plain

    @pytest.mark.parametrize("alpha", [0.25, 0.5, 0.75, 1.0])
    @pytest.mark.parametrize("p", [-1.0, 0.5, 2.0, 3.0])
    @pytest.mark.parametrize("t", [0.1, 1.0, 4.0, 10.0])
    def test_power_rule_grid(self, alpha, p, t):
        got = conformable_derivative(lambda s: s**p, t, alpha)
        want = p * t ** (p - alpha)
        assert math.isclose(got, want, rel_tol=1e-7)

    def test_analytic_derivative_used(self):
        got = conformable_derivative(lambda t: t * t, 4.0, 0.5, dfdt=lambda t: 2.0 * t)
        assert got == 2.0 * 4.0**1.5

    def test_rejects_nonpositive_time(self):
        with pytest.raises(ValueError):
            conformable_derivative(lambda t: t, 0.0, 0.5)

    def test_rejects_bad_order(self):
        with pytest.raises(ValueError):
            conformable_derivative(lambda t: t, 1.0, 1.5)


class TestEvalPoint:
    def test_interior_only(self):
        with pytest.raises(ValueError):
            EvalPoint(0.0, 1.0)
        with pytest.raises(ValueError):
            EvalPoint(1.0, -0.1)


class TestResidual:
    def test_zero_solution(self):
        spec = make_example31(1.0, 1.0, 0.7)
        assert residual(spec, constant_pair(0.0, 0.0), EvalPoint(1.0, 1.0)) == (0.0, 0.0)

    def test_constant_steady_state(self):
        # constants solve the a = b system: the (1, 1) pair at a = b = 1
        spec = make_example31(1.0, 1.0, 1.0)
        r = residual(spec, constant_pair(1.0, 1.0), EvalPoint(1.3, 0.6))
        assert r == (0.0, 0.0)

    def test_power_ansatz(self):
        # u = x^(1+sqrt(ab)), v = -(sqrt(ab)/a) x^(1+sqrt(ab)) solves the system;
        # the exponent is forced by (p - 1)^2 = ab.
        a, b = 2.0, 0.5
        w = math.sqrt(a * b)
        p = 1.0 + w
        assert math.isclose((p - 1.0) ** 2, a * b, rel_tol=1e-15)
        spec = make_example31(a, b, 0.6)
        sol = SolutionPair(
            u=lambda x, t: x**p, v=lambda x, t: -(w / a) * x**p, label="ansatz"
        )
        r1, r2 = scaled_residual(spec, sol, EvalPoint(1.2, 0.8))
        assert abs(r1) < 1e-7 and abs(r2) < 1e-7

    def test_linearity(self):
        spec = make_example31(1.0, 1.0, 0.8)
        p = EvalPoint(1.1, 0.9)
        s1 = SolutionPair(u=lambda x, t: x * x * t, v=lambda x, t: math.sin(x) + t)
        s2 = SolutionPair(u=lambda x, t: math.exp(-x * t), v=lambda x, t: x * t * t)
        combo = SolutionPair(
            u=lambda x, t: 2.0 * s1.u(x, t) + 3.0 * s2.u(x, t),
            v=lambda x, t: 2.0 * s1.v(x, t) + 3.0 * s2.v(x, t),
        )
        r1 = residual(spec, s1, p)
        r2 = residual(spec, s2, p)
        rc = residual(spec, combo, p)
        for i in range(2):
            assert math.isclose(rc[i], 2.0 * r1[i] + 3.0 * r2[i], rel_tol=1e-6, abs_tol=1e-7)


class TestSolutionPair:
    def test_fd_matches_analytic(self):
        sol_fd = SolutionPair(u=lambda x, t: x**3 * t, v=lambda x, t: x * math.exp(-t))
        assert math.isclose(sol_fd.u_x(1.2, 0.7), 3 * 1.2**2 * 0.7, rel_tol=1e-9)
        assert math.isclose(sol_fd.u_xx(1.2, 0.7), 6 * 1.2 * 0.7, rel_tol=1e-6)
        assert math.isclose(sol_fd.u_xt(1.2, 0.7), 3 * 1.2**2, rel_tol=1e-6)
        assert math.isclose(sol_fd.v_t(1.2, 0.7), -1.2 * math.exp(-0.7), rel_tol=1e-9)

    def test_analytic_flag(self):
        assert constant_pair(1.0, 2.0).analytic
        assert not SolutionPair(u=lambda x, t: x, v=lambda x, t: t).analytic
