"""Restart conditions, the two schemes, and monotonicity verification."""

import numpy as np
import pytest

from accelflow import (make_diag_quadratic, make_random_spd_quadratic,
                       restart_condition_ours, restart_condition_su, run_restart,
                       su_growth, unified_form_from_scaling, verify_monotone)

RESTART2D = make_diag_quadratic([0.5, 0.49], L=1.0)
X0 = np.array([1.0, 1.0])
B_CC = lambda k: k / (k + 3.0)


class TestConditions:
    def test_deceleration_against_velocity_triggers(self):
        # acceleration opposing the velocity: inner product -0.5
        assert restart_condition_ours([1.5, 0.0], [1.0, 0.0], [0.0, 0.0])

    def test_zero_velocity_does_not_trigger(self):
        assert not restart_condition_ours([2.0, 0.0], [1.0, 0.0], [1.0, 0.0])

    def test_accelerating_run_does_not_trigger(self):
        assert not restart_condition_ours([2.5], [1.0], [0.0])

    def test_speed_drop_triggers(self):
        assert restart_condition_su([1.5], [1.0], [0.0])

    def test_equal_speeds_do_not_trigger(self):
        assert not restart_condition_su([2.0], [1.0], [0.0])

    def test_speed_growth_does_not_trigger(self):
        assert not restart_condition_su([2.5], [1.0], [0.0])

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            restart_condition_ours([1.0], [1.0, 2.0], [0.0, 0.0])


class TestMonotoneScheme:
    def test_strict_decrease_on_near_isotropic_quadratic(self):
        run = run_restart(RESTART2D, "ours", lambda k: 1.0, B_CC, X0, 200, k_min=1)
        ok, first = verify_monotone(run)
        assert ok, f"violation at k={first}"
        f = run.trajectory.f_values
        positive = f > 0
        assert np.all(np.diff(f)[positive[:-1]] < 0)

    def test_monotone_for_any_valid_coefficients(self):
        # the substituted plain gradient step cannot increase f when s <= 1/L
        for seed in range(20):
            prob = make_random_spd_quadratic(5, 0.0, 1.0, seed=seed)
            x0 = np.random.default_rng(seed + 100).standard_normal(5)
            run = run_restart(prob, "ours", lambda k: 0.9, B_CC, x0, 100, k_min=1)
            ok, first = verify_monotone(run)
            assert ok, f"seed {seed}: violation at k={first}"

    def test_descent_wherever_condition_holds_on_plain_runs(self):
        # per-step form of the guarantee: every step of a plain run whose
        # acceleration-velocity inner product stays non-negative decreases f
        checked = 0
        for seed in range(20):
            prob = make_random_spd_quadratic(5, 0.0, 1.0, seed=seed)
            x0 = np.random.default_rng(seed + 500).standard_normal(5)
            plain = run_restart(prob, "none", lambda k: 0.9, B_CC, x0, 60, k_min=1)
            pts = plain.trajectory.points
            f = plain.trajectory.f_values
            for k in range(1, len(pts) - 1):
                if not restart_condition_ours(pts[k + 1], pts[k], pts[k - 1]):
                    checked += 1
                    assert f[k + 1] < f[k], f"seed {seed}: no descent at k={k}"
        assert checked > 100

    def test_k_min_spacing_between_events(self):
        prob = make_diag_quadratic([0.02, 0.005], L=1.0)
        s_of, b_of = (lambda k: 1.0), B_CC
        run = run_restart(prob, "ours", s_of, b_of, X0, 300, k_min=20)
        gaps = np.diff(run.events)
        assert np.all(gaps >= 20)


class TestSpeedComparatorScheme:
    def test_objective_jump_matches_reported_ratio(self):
        run = run_restart(RESTART2D, "su", lambda k: 1.0, B_CC, X0, 200, k_min=1)
        ok, first = verify_monotone(run)
        assert not ok
        assert first == 8  # the increase shows at iterate 9
        f = run.trajectory.f_values
        assert 2.3 <= f[9] / f[8] <= 3.3

    def test_no_restarts_at_optimum(self):
        prob = make_diag_quadratic([0.5], L=1.0, mu=1.0)
        run = run_restart(prob, "none", lambda k: 1.0, B_CC, np.zeros(1), 50, k_min=1)
        assert run.events == []
        assert np.all(run.trajectory.points == 0.0)
        ok, _ = verify_monotone(run)
        assert ok  # vacuously: f stays at the optimal value

    def test_restart_flags_channel(self):
        run = run_restart(RESTART2D, "su", lambda k: 1.0, B_CC, X0, 50, k_min=1)
        flags = run.trajectory.channels["restart"]
        assert set(np.unique(flags)) <= {0.0, 1.0}
        # a restart at step k flags the iterate it produced, x_{k+1}
        assert [k - 1 for k, v in enumerate(flags) if v == 1.0] == run.events


class TestHypothesisEnforcement:
    def test_oversized_step_rejected(self):
        with pytest.raises(ValueError):
            run_restart(RESTART2D, "ours", lambda k: 1.5, B_CC, X0, 10, k_min=1)

    def test_oversized_momentum_rejected(self):
        with pytest.raises(ValueError):
            run_restart(RESTART2D, "ours", lambda k: 1.0, lambda k: 1.2, X0, 10, k_min=1)

    def test_unknown_scheme_rejected(self):
        with pytest.raises(ValueError):
            run_restart(RESTART2D, "other", lambda k: 1.0, B_CC, X0, 10)


class TestUnifiedForm:
    def test_quadratic_growth_coefficients(self):
        # for the quadratic growth: c1 = 3/(t+eps), c2 = 1/L, b = a (t+eps)/2
        eps, L = 1.0, 1.0
        sc = su_growth(eps, L, 1.0).scaling
        uf = unified_form_from_scaling(sc, mu=0.0)
        for t in [1.0, 5.0, 20.0]:
            assert uf.c1(t) == pytest.approx(3.0 / (t + eps), rel=1e-4)
            assert uf.c2(t) == pytest.approx(1.0 / L, rel=1e-9)
            assert uf.b(t) == pytest.approx(sc.a(t) * (t + eps) / 2.0, rel=1e-9)
        ok, violation = uf.validate(np.linspace(0.5, 50.0, 25))
        assert ok, violation

    def test_positivity_check_reports_violation(self):
        from accelflow import UnifiedForm

        uf = UnifiedForm(c1=lambda t: 1.0, c2=lambda t: 1.0, b=lambda t: t - 1.0)
        ok, violation = uf.validate([0.5, 2.0])
        assert not ok
        assert violation[1] == "b <= 0"
