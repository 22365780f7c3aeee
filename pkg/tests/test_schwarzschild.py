"""Radial solver: oracle matches, residuals, Wronskian, horizon behavior."""

import numpy as np
import pytest

from fishermodes.errors import BlowUpError, HorizonDomainError, NearHorizonError
from fishermodes.geometry import MetricSpec
from fishermodes.schwarzschild import (
    RadialProblem,
    flat_limit_deviation,
    near_horizon_start,
    solve_radial,
    wronskian,
)
from fishermodes.specfun import spherical_bessel_j, spherical_bessel_j_derivs

MINK = MetricSpec.minkowski()
SCHW = MetricSpec.schwarzschild(1.0)


def bessel_matched_problem(metric, ell, k=1.0, r_start=0.5, r_end=20.0):
    j0, d1, _ = spherical_bessel_j_derivs(ell, k * r_start)
    return RadialProblem(metric, eta_prime=k, ell=ell, alpha_prime_sq=0.0,
                         r_start=r_start, r_end=r_end,
                         init_value=j0, init_slope=k * d1)


class TestFlatOracle:
    @pytest.mark.parametrize("ell", [0, 1, 2])
    def test_matches_spherical_bessel(self, ell):
        sol = solve_radial(bessel_matched_problem(MINK, ell), 1e-10)
        oracle = spherical_bessel_j(ell, sol.grid)
        gap = np.max(np.abs(sol.values - oracle)) / np.max(np.abs(oracle))
        assert gap <= 1e-6

    def test_rs_continuity_monotone(self):
        gaps = []
        for rs in (1e-2, 1e-3, 1e-4):
            sol = solve_radial(
                bessel_matched_problem(MetricSpec.schwarzschild(rs), 0), 1e-10
            )
            oracle = spherical_bessel_j(0, sol.grid)
            gaps.append(np.max(np.abs(sol.values - oracle)) / np.max(np.abs(oracle)))
        assert gaps[0] > gaps[1] > gaps[2]


class TestSolveRadial:
    def test_constant_solution_preserved(self):
        prob = RadialProblem(SCHW, 0.0, 0, 0.0, 1.5, 50.0, 1.0, 0.0)
        sol = solve_radial(prob, 1e-10)
        assert np.max(np.abs(sol.values - 1.0)) <= 1e-10
        assert sol.max_residual <= 1e-10

    def test_residual_invariant(self):
        # independent finite-difference residual <= 1e-6 for returned solutions
        cases = [
            RadialProblem(SCHW, 1.0, 1, 0.5, 1.1, 50.0, 1.0, 0.0),
            RadialProblem(SCHW, 2.0, 0, 0.0, 1.0 + 1e-4, 20.0, 1.0, 0.0),
            RadialProblem(MINK, 3.0, 2, 1.0, 0.5, 30.0, 0.3, 1.0),
        ]
        for prob in cases:
            sol = solve_radial(prob, 1e-10)
            assert sol.max_residual <= 1e-6, prob

    def test_grid_covers_window_with_min_points(self):
        prob = RadialProblem(SCHW, 0.5, 0, 0.1, 2.0, 4.0, 1.0, 0.0)
        sol = solve_radial(prob, 1e-8)
        assert sol.grid.size >= 200
        assert sol.grid[0] == prob.r_start and sol.grid[-1] == prob.r_end

    def test_determinism(self):
        prob = RadialProblem(SCHW, 1.0, 1, 0.5, 1.5, 30.0, 1.0, 0.0)
        a = solve_radial(prob, 1e-9)
        b = solve_radial(prob, 1e-9)
        np.testing.assert_array_equal(a.values, b.values)
        np.testing.assert_array_equal(a.slopes, b.slopes)

    def test_tightening_tolerance_never_hurts(self):
        prob = RadialProblem(SCHW, 1.0, 1, 0.5, 1.5, 30.0, 1.0, 0.0)
        tight = solve_radial(prob, 1e-12, n_points=2001)
        diffs = [
            np.max(np.abs(solve_radial(prob, rt, n_points=2001).values - tight.values))
            for rt in (1e-5, 5e-6, 2.5e-6, 1.25e-6)
        ]
        for a, b in zip(diffs, diffs[1:]):
            assert b <= 1.1 * a  # recorded: strictly decreasing, 10% slack for noise

    def test_rel_tol_range(self):
        prob = RadialProblem(MINK, 1.0, 0, 0.0, 0.5, 2.0, 1.0, 0.0)
        with pytest.raises(ValueError):
            solve_radial(prob, 1e-3)
        with pytest.raises(ValueError):
            solve_radial(prob, 1e-13)

    def test_horizon_start_rejected(self):
        with pytest.raises(HorizonDomainError):
            RadialProblem(SCHW, 1.0, 0, 0.0, 0.5, 2.0, 1.0, 0.0)

    def test_near_horizon_stall_reports_advice(self):
        prob = RadialProblem(SCHW, 5.0, 0, 0.0, 1.0 + 1e-14, 50.0, 1.0, 0.0)
        with pytest.raises(NearHorizonError, match="increase r_start"):
            solve_radial(prob, 1e-10)

    def test_blow_up_carries_last_good_r(self):
        # alpha'^2 = -1600 grows like e^{40 r}: overflows mid-window
        prob = RadialProblem(MINK, 0.0, 0, -1600.0, 0.5, 40.0, 1.0, 1.0)
        with pytest.raises(BlowUpError) as err:
            solve_radial(prob, 1e-10)
        assert err.value.last_good_r is not None
        assert 0.5 < err.value.last_good_r < 40.0


class TestWronskian:
    def test_constant_across_window(self):
        pa = RadialProblem(SCHW, 1.0, 1, 0.5, 1.1, 50.0, 1.0, 0.0)
        pb = RadialProblem(SCHW, 1.0, 1, 0.5, 1.1, 50.0, 0.0, 1.0)
        w = wronskian(solve_radial(pa, 1e-10), solve_radial(pb, 1e-10))
        assert np.max(np.abs(w - w[0])) / abs(w[0]) <= 1e-6

    def test_requires_common_grid(self):
        pa = RadialProblem(SCHW, 1.0, 1, 0.5, 1.1, 50.0, 1.0, 0.0)
        pb = RadialProblem(SCHW, 1.0, 1, 0.5, 1.1, 40.0, 0.0, 1.0)
        with pytest.raises(ValueError):
            wronskian(solve_radial(pa, 1e-9), solve_radial(pb, 1e-9))


class TestFlatLimit:
    def test_zero_rs_is_exact(self):
        prob = RadialProblem(MINK, 1.0, 0, 0.0, 10.0, 20.0, 1.0, 0.0)
        assert flat_limit_deviation(prob, 1e-10) == 0.0

    def test_far_window_beats_near_window(self):
        rs = 0.01
        far = flat_limit_deviation(
            RadialProblem(MetricSpec.schwarzschild(rs), 1.0, 0, 0.0, 10.0, 20.0, 1.0, 0.0),
            1e-10,
        )
        near = flat_limit_deviation(
            RadialProblem(MetricSpec.schwarzschild(rs), 1.0, 0, 0.0, 2.0, 4.0, 1.0, 0.0),
            1e-10,
        )
        assert far < near  # recorded: 3.33e-3 vs 4.62e-3

    def test_deviation_halves_when_window_moves_out_tenfold(self):
        rs = 0.01
        d10 = flat_limit_deviation(
            RadialProblem(MetricSpec.schwarzschild(rs), 1.0, 0, 0.0, 10.0, 20.0, 1.0, 0.0),
            1e-10,
        )
        d100 = flat_limit_deviation(
            RadialProblem(MetricSpec.schwarzschild(rs), 1.0, 0, 0.0, 100.0, 110.0, 1.0, 0.0),
            1e-10,
        )
        assert d100 <= d10 / 2.0  # recorded ratio: 4.7

    def test_precondition_far_field(self):
        prob = RadialProblem(SCHW, 1.0, 0, 0.0, 50.0, 60.0, 1.0, 0.0)
        with pytest.raises(ValueError):
            flat_limit_deviation(prob, 1e-10)


class TestNearHorizonStart:
    def test_static_s_wave_leading_order(self):
        prob = RadialProblem(SCHW, 0.0, 0, 0.0, 1.5, 3.0, 1.0, 0.0)
        v, s = near_horizon_start(prob, 1e-4)
        assert v == 1.0 and s == 0.0

    def test_oscillatory_in_log_distance(self):
        w = 2.0  # eta' * r_s
        for delta in (1e-3, 1e-4, 1e-5):
            prob = RadialProblem(SCHW, 2.0, 0, 0.0, 1.0 + delta, 3.0, 1.0, 0.0)
            v, s = near_horizon_start(prob, delta)
            assert np.isfinite(v) and np.isfinite(s)
            assert v == pytest.approx(np.cos(w * np.log(delta)), rel=1e-12)

    def test_delta_range(self):
        prob = RadialProblem(SCHW, 0.0, 0, 0.0, 1.5, 3.0, 1.0, 0.0)
        with pytest.raises(ValueError):
            near_horizon_start(prob, 1e-9)
        with pytest.raises(ValueError):
            near_horizon_start(prob, 0.1)

    def test_requires_horizon(self):
        prob = RadialProblem(MINK, 0.0, 0, 0.0, 1.5, 3.0, 1.0, 0.0)
        with pytest.raises(ValueError):
            near_horizon_start(prob, 1e-4)

    def test_series_convergence_order(self):
        # halving delta shrinks the endpoint error by the next-order factor
        def endpoint(delta):
            probe = RadialProblem(SCHW, 0.0, 1, 0.3, 1.0 * (1 + delta), 3.0, 1.0, 0.0)
            v, s = near_horizon_start(probe, delta)
            prob = RadialProblem(SCHW, 0.0, 1, 0.3, 1.0 * (1 + delta), 3.0, v, s)
            return solve_radial(prob, 1e-12).values[-1].real

        ref = endpoint(1e-7)
        errs = [abs(endpoint(d) - ref) for d in (1.6e-3, 8e-4, 4e-4)]
        assert errs[0] / errs[1] >= 2.5  # recorded: ~3.5 (delta^2 log delta)
        assert errs[1] / errs[2] >= 2.5

    def test_frobenius_log_derivative_complex_pair(self):
        # continue (r - r_s)^{i eta' r_s} numerically; the log-derivative of
        # the continued solution stays at i eta' r_s near the horizon
        w = 1.0
        s0 = 1e-5
        y0 = np.exp(1j * w * np.log(s0))
        dy0 = 1j * w / s0 * y0
        prob = RadialProblem(SCHW, 1.0, 0, 0.0, 1.0 + s0, 1.0 + 10 * s0, y0, dy0)
        sol = solve_radial(prob, 1e-11)
        mid = sol.grid.size // 2
        s_mid = sol.grid[mid] - 1.0
        logderiv = s_mid * sol.slopes[mid] / sol.values[mid]
        assert logderiv.real == pytest.approx(0.0, abs=1e-3)
        assert logderiv.imag == pytest.approx(w, abs=1e-3)
