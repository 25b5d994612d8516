"""Schedules, scaling functions, and the tau conversions."""

import math

import numpy as np
import pytest

from accelflow import (MonotoneMap, ScheduleError, constant_momentum_sc,
                       fit_geometric_ratio, fit_polynomial_growth,
                       muehlebach_convex_scaling, scaling_from_tau, schedule_from_A,
                       su_growth, su_limit_coefficients, tau_from_scaling,
                       validate_ideal_scaling, wilson_growth)
from accelflow.coefficients import ContinuousScaling


class TestScheduleFromA:
    def test_quadratic_growth_first_step(self):
        # A_k = (k+1)^2 / 4: A_0 = 0.25, A_1 = 1
        A = (np.arange(3) + 1.0) ** 2 / 4.0
        sch = schedule_from_A(A, mu=0.0)
        assert sch.theta[0] == pytest.approx(0.75)
        assert sch.a[0] == pytest.approx(0.75)
        assert sch.s[0] == pytest.approx(0.5625)

    def test_exponential_growth_constants(self):
        rho = math.sqrt(0.001)
        A = np.exp(rho * np.arange(10))
        sch = schedule_from_A(A, mu=0.001)
        a_expect = (math.exp(rho) - 1) / (2 * math.exp(rho) - 1)
        s_expect = (1 - math.exp(-rho)) ** 2 / 0.001
        assert sch.a[0] == pytest.approx(a_expect, rel=1e-12)
        assert sch.a[0] == pytest.approx(0.030188, abs=5e-7)
        assert sch.s[0] == pytest.approx(s_expect, rel=1e-12)
        assert sch.s[0] == pytest.approx(0.96895, abs=5e-5)
        assert sch.s[0] <= 1.0  # s <= h^2 / L at h = L = 1

    def test_momentum_coefficient_at_k100(self):
        A = (np.arange(102) ** 2) / 4.0
        A[0] = 1e-9  # A_0 must stay positive; k = 100 is unaffected
        sch = schedule_from_A(A, mu=0.0)
        expect = (201 / 199) * (99 / 101) ** 2
        assert sch.b[100] == pytest.approx(expect, rel=1e-10)
        assert expect == pytest.approx(0.97045, abs=1e-5)
        assert 100 / 103 == pytest.approx(0.97087, abs=1e-5)

    def test_rejects_non_increasing_A(self):
        with pytest.raises(ScheduleError):
            schedule_from_A([1.0, 1.0, 2.0], mu=0.0)
        with pytest.raises(ScheduleError):
            schedule_from_A([1.0, 0.5], mu=0.0)

    def test_rejects_negative_mu(self):
        with pytest.raises(ValueError):
            schedule_from_A([1.0, 2.0], mu=-0.1)

    def test_invariant_ranges(self):
        A = np.cumsum(np.random.default_rng(0).uniform(0.1, 2.0, size=50)) + 1.0
        sch = schedule_from_A(A, mu=0.01)
        assert np.all((sch.theta > 0) & (sch.theta < 1))
        assert np.all((sch.a >= 0) & (sch.a <= 1))
        assert np.all(sch.s > 0)
        assert sch.b[0] == 0.0


class TestQuadraticGrowth:
    def test_values_at_zero(self):
        fam = su_growth(1.0, 1.0, 1.0)
        assert fam.scaling.A(0.0) == pytest.approx(0.25)
        assert fam.scaling.a(0.0) == pytest.approx(0.75)

    @pytest.mark.parametrize("h", [1.0, 0.5, 0.1])
    def test_step_bound(self, h):
        sch = su_growth(1.0, 2.0, h).schedule(200)
        assert np.all(sch.s <= h * h / 2.0 + 1e-15)

    @pytest.mark.parametrize("h", [1.0, 0.1])
    def test_schedule_matches_closed_form(self, h):
        eps, L = 1.0, 1.0
        sch = su_growth(eps, L, h).schedule(100)
        k = np.arange(100)
        a_expect = h * (2 * h * k + 2 * eps + h) / (h * k + eps + h) ** 2
        s_expect = h**2 / (4 * L) * (2 * h * k + 2 * eps + h) ** 2 / (h * k + eps + h) ** 2
        assert np.max(np.abs(sch.a - a_expect)) < 1e-12
        assert np.max(np.abs(sch.s - s_expect)) < 1e-12

    def test_small_h_limit_of_lookahead_weight(self):
        eps, h = 1.0, 1e-6
        sc = su_growth(eps, 1.0, h).scaling
        for t in [0.0, 1.0, 10.0]:
            assert sc.a(t) / h == pytest.approx(2.0 / (t + eps), rel=1e-5)

    def test_rejects_bad_parameters(self):
        with pytest.raises(ValueError):
            su_growth(0.0, 1.0, 1.0)
        with pytest.raises(ValueError):
            su_growth(1.0, -1.0, 1.0)


class TestExponentialGrowth:
    def test_momentum_close_to_constant_step_limit(self):
        sch = wilson_growth(0.001, 1.0, 1.0).schedule(5)
        b_exact = sch.b[1]
        b_limit = constant_momentum_sc(0.001, 1.0)
        assert b_exact == pytest.approx(0.93962, abs=5e-6)
        assert b_limit == pytest.approx(0.93869, abs=5e-6)
        assert abs(b_exact - b_limit) / b_limit < 0.002

    def test_lookahead_weight_vanishes_with_h(self):
        sc = wilson_growth(1.0, 1.0, 1e-9).scaling
        assert sc.a(0.0) < 1e-8

    @pytest.mark.parametrize("h", [1.0, 0.5, 0.1, 0.01])
    def test_step_bound(self, h):
        sch = wilson_growth(0.001, 1.0, h).schedule(10)
        assert np.all(sch.s <= h * h / 1.0 + 1e-15)

    def test_rejects_non_positive_mu(self):
        with pytest.raises(ValueError):
            wilson_growth(0.0, 1.0, 1.0)


class TestIdealScalingValidation:
    def test_muehlebach_convex_passes_with_equality(self):
        report = validate_ideal_scaling(muehlebach_convex_scaling(1.0),
                                        np.linspace(0.0, 50.0, 101))
        assert report.passed

    def test_constant_beta_fails(self):
        sc = ContinuousScaling(exp_alpha=lambda t: 1.0, beta=lambda t: 1.0,
                               beta_dot=lambda t: 0.0, a=lambda t: 0.5)
        report = validate_ideal_scaling(sc, np.linspace(0.0, 1.0, 5))
        assert not report.passed
        assert report.first_violation[1] == "beta_dot <= 0"

    def test_exponential_growth_passes(self):
        sc = wilson_growth(0.001, 1.0, 1.0).scaling
        assert validate_ideal_scaling(sc, np.linspace(0.0, 100.0, 201)).passed

    def test_rejects_empty_grid(self):
        with pytest.raises(ValueError):
            validate_ideal_scaling(muehlebach_convex_scaling(1.0), [])


class TestTauFromScaling:
    def test_quadratic_growth_is_integral_of_A_dot(self):
        fam = su_growth(1.0, 1.0, 1.0)
        grid = np.linspace(0.0, 20.0, 81)
        tau = tau_from_scaling(fam.scaling, 0.0, grid)
        expect = fam.scaling.A(20.0) - fam.scaling.A(0.0)
        assert float(tau(20.0)) == pytest.approx(expect, abs=1e-6)
        # eps -> 0: tau(t) -> t^2 / (4 L)
        fam2 = su_growth(1e-7, 1.0, 1.0)
        tau2 = tau_from_scaling(fam2.scaling, 0.0, grid)
        assert float(tau2(20.0)) == pytest.approx(400.0 / 4.0, rel=1e-6)

    def test_exponential_growth_is_linear(self):
        mu, L = 0.001, 1.0
        sc = wilson_growth(mu, L, 1.0).scaling
        grid = np.linspace(0.0, 10.0, 41)
        tau = tau_from_scaling(sc, mu, grid)
        assert float(tau(10.0)) == pytest.approx(10.0 / math.sqrt(mu * L), rel=1e-10)

    def test_starts_at_zero(self):
        sc = wilson_growth(0.5, 1.0, 1.0).scaling
        tau = tau_from_scaling(sc, 0.5, np.linspace(0.0, 5.0, 11))
        assert float(tau(0.0)) == 0.0


class TestScalingFromTau:
    def test_convex_mode_formulas(self):
        sc = scaling_from_tau(lambda t: t, lambda t: 1.0, mu=0.0, C=1.0)
        for t in [0.0, 1.0, 4.0]:
            assert sc.alpha(t) == pytest.approx(-math.log(t + 1.0))
            assert sc.beta(t) == pytest.approx(math.log(t + 1.0))

    def test_strongly_convex_mode_formulas(self):
        sc = scaling_from_tau(lambda t: t, lambda t: 1.0, mu=1.0)
        for t in [0.0, 2.0]:
            assert sc.alpha(t) == pytest.approx(0.0, abs=1e-15)
            assert sc.beta(t) == pytest.approx(t)

    @pytest.mark.parametrize("mu", [0.0, 1.0])
    def test_round_trip_reproduces_tau(self, mu):
        tau_fn = lambda t: t + 0.3 * t * t
        tau_dot = lambda t: 1.0 + 0.6 * t
        sc = scaling_from_tau(tau_fn, tau_dot, mu=mu, C=2.0)
        grid = np.linspace(0.0, 5.0, 51)
        assert validate_ideal_scaling(sc, grid).passed
        tau = tau_from_scaling(sc, mu, grid)
        for t in [1.0, 3.0, 5.0]:
            assert float(tau(t)) == pytest.approx(tau_fn(t), abs=1e-6)

    def test_rejects_non_increasing_tau(self):
        sc = scaling_from_tau(lambda t: -t, lambda t: -1.0, mu=0.0, C=1.0)
        with pytest.raises(ValueError):
            sc.exp_alpha(1.0)


class TestGrowthBounds:
    @pytest.mark.parametrize("p", [1.0, 1.5, 2.0])
    def test_polynomial_exponent_capped_at_two(self, p):
        L = 1.0
        k = np.arange(301, dtype=float)
        C = 1.0 / (4.0 * L * max(p, 1.0) ** 2)  # keeps s_k <= 1/L for p <= 2
        A = C * (k + 1.0) ** p
        sch = schedule_from_A(A, mu=0.0)
        assert np.all(sch.s <= 1.0 / L + 1e-12)
        assert fit_polynomial_growth(sch) <= 2.0 + 0.1

    def test_geometric_ratio_capped(self):
        mu, L = 0.001, 1.0
        bound = 1.0 / (1.0 - math.sqrt(mu / L))
        for rho in [1.001, 1.01, bound]:
            A = rho ** np.arange(200)
            sch = schedule_from_A(A, mu=mu)
            if np.all(sch.s <= 1.0 / L + 1e-12):
                assert fit_geometric_ratio(sch) <= bound + 1e-6

    def test_ratio_above_bound_violates_step_limit(self):
        mu, L = 0.001, 1.0
        bound = 1.0 / (1.0 - math.sqrt(mu / L))
        A = (bound * 1.01) ** np.arange(50)
        sch = schedule_from_A(A, mu=mu)
        assert np.any(sch.s > 1.0 / L)


class TestLimitCoefficients:
    def test_first_steps(self):
        s, b = su_limit_coefficients(1.0)
        assert s(0) == pytest.approx(0.25)
        assert b(0) == 0.0
        assert b(1) == 0.0
        assert b(100) == pytest.approx((201 / 199) * (99 / 101) ** 2, rel=1e-14)

    def test_h_scaling(self):
        s1, _ = su_limit_coefficients(1.0, h=1.0)
        s01, _ = su_limit_coefficients(1.0, h=0.1)
        assert s01(7) == pytest.approx(0.01 * s1(7), rel=1e-14)


class TestMonotoneMap:
    def test_inverse_round_trip(self):
        grid = np.linspace(0.0, 5.0, 101)
        tau = MonotoneMap(grid=grid, values=grid + grid**2)
        us = np.linspace(0.0, 30.0, 57)
        assert np.max(np.abs(tau(tau.inverse(us)) - us)) < 1e-8

    def test_rejects_non_monotone_values(self):
        with pytest.raises(ValueError):
            MonotoneMap(grid=np.array([0.0, 1.0, 2.0]), values=np.array([0.0, 1.0, 0.5]))
