"""Numerical solution of the Schwarzschild radial equation.

The equation, written with x = 1 - r_s/r kept as the stored subexpression,

    R'' + [2/r + r_s/(r^2 x)] R'
        + (alpha'^2 + eta'^2/x - l(l+1)/r^2) R / x = 0,

is a regular singular point problem at r = r_s with Frobenius exponents
+- i eta' r_s.  Integration uses an adaptive embedded Runge-Kutta scheme
(DOP853) with dense output; correctness is judged by an independent
finite-difference residual on the returned grid, never by the
integrator's own error estimate.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.integrate import solve_ivp

from .errors import BlowUpError, HorizonDomainError, NearHorizonError
from .geometry import MetricSpec

__all__ = [
    "RadialProblem",
    "RadialSolution",
    "solve_radial",
    "ode_coefficients",
    "finite_difference_residual",
    "wronskian",
    "flat_limit_deviation",
    "near_horizon_start",
]

_LOG_GRID_THRESHOLD = 0.2  # switch to log spacing when (r_start - r_s)/r_s is below


@dataclass(frozen=True)
class RadialProblem:
    """One initial-value radial problem on [r_start, r_end], r_start > r_s."""

    metric: MetricSpec
    eta_prime: float
    ell: int
    alpha_prime_sq: float
    r_start: float
    r_end: float
    init_value: complex = 1.0
    init_slope: complex = 0.0

    def __post_init__(self):
        if self.ell < 0:
            raise ValueError(f"ell must be >= 0, got {self.ell}")
        if self.r_start <= self.metric.r_s:
            raise HorizonDomainError(
                f"r_start = {self.r_start} must exceed r_s = {self.metric.r_s}"
            )
        if not self.r_start < self.r_end:
            raise ValueError(f"need r_start < r_end, got [{self.r_start}, {self.r_end}]")
        for name in ("eta_prime", "alpha_prime_sq", "r_start", "r_end"):
            if not np.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")


@dataclass(frozen=True)
class RadialSolution:
    """Dense solution samples with an independent residual diagnostic."""

    grid: np.ndarray
    values: np.ndarray
    slopes: np.ndarray
    residuals: np.ndarray
    max_residual: float
    problem: RadialProblem


def ode_coefficients(prob: RadialProblem, r):
    """(c1, c0) such that the equation reads R'' + c1 R' + c0 R = 0."""
    r = np.asarray(r, dtype=float)
    rs = prob.metric.r_s
    x = 1.0 - rs / r
    l2 = prob.ell * (prob.ell + 1)
    c1 = 2.0 / r + rs / (r**2 * x)
    c0 = (prob.alpha_prime_sq + prob.eta_prime**2 / x - l2 / r**2) / x
    return c1, c0


def _characteristic_wavenumber(prob: RadialProblem) -> float:
    return float(np.sqrt(abs(prob.alpha_prime_sq + prob.eta_prime**2)))


def _build_grid(prob: RadialProblem, n_points: Optional[int]):
    """Sample grid: uniform in r, or uniform in ln(r - r_s) near the horizon.

    Returns (grid, param_step, s) where s = r - r_s on a log grid (None on a
    uniform grid); derivatives w.r.t. the uniform parameter are chain-ruled
    back to r by the residual evaluator.
    """
    rs = prob.metric.r_s
    span = prob.r_end - prob.r_start
    k = _characteristic_wavenumber(prob)
    log_grid = rs > 0.0 and (prob.r_start - rs) < _LOG_GRID_THRESHOLD * rs
    if log_grid:
        t0, t1 = np.log(prob.r_start - rs), np.log(prob.r_end - rs)
        # resolve both the log-phase eta'*r_s near the horizon and the
        # far-field oscillation k via dr = s*dt
        n = max(
            801,
            n_points or 0,
            int(96 * abs(prob.eta_prime) * rs * (t1 - t0) / (2 * np.pi)) + 1,
            # far-field spacing on a log grid is dr = (r_end - r_s) dt
            int(96 * k * (prob.r_end - rs) * (t1 - t0) / (2 * np.pi)) + 1,
        )
        n = min(n, 200_001)
        t = np.linspace(t0, t1, n)
        s = np.exp(t)
        return rs + s, (t1 - t0) / (n - 1), s
    n = max(601, n_points or 0, int(96 * k * span / (2 * np.pi)) + 1)
    n = min(n, 200_001)
    return np.linspace(prob.r_start, prob.r_end, n), span / (n - 1), None


def _fd_derivs(f: np.ndarray, h: float, stride: int = 1):
    """Interior 4th-order central differences with a stencil stride.

    A stride > 1 widens the effective step, trading truncation error for a
    1/h^2-smaller roundoff amplification; edges hold the nearest interior
    value.
    """
    k = stride
    hk = h * k
    d1 = np.empty_like(f)
    d2 = np.empty_like(f)
    n = f.size
    lo, hi = 2 * k, n - 2 * k
    fm2, fm1 = f[: hi - 2 * k], f[k: hi - k]
    fp1, fp2 = f[lo + k: n - k], f[lo + 2 * k:]
    f0 = f[lo:hi]
    d1[lo:hi] = (fm2 - 8 * fm1 + 8 * fp1 - fp2) / (12 * hk)
    d2[lo:hi] = (-fm2 + 16 * fm1 - 30 * f0 + 16 * fp1 - fp2) / (12 * hk**2)
    for d in (d1, d2):
        d[:lo] = d[lo]
        d[hi:] = d[hi - 1]
    return d1, d2


def _residual_at_stride(prob, grid, values, param_step, s, stride):
    c1, c0 = ode_coefficients(prob, grid)
    d1, d2 = _fd_derivs(values, param_step, stride)
    if s is None:
        rr_d1, rr_d2 = d1, d2
    else:
        rr_d1 = d1 / s
        rr_d2 = (d2 - d1) / s**2
    residual = rr_d2 + c1 * rr_d1 + c0 * values
    span = grid[-1] - grid[0]
    scale = max(
        np.max(np.abs(c0 * values)),
        np.max(np.abs(c1 * rr_d1)),
        np.max(np.abs(rr_d2)),
        np.max(np.abs(values)) / span**2,
        1e-300,
    )
    # the edge rows reuse interior derivatives and are not meaningful
    lo, hi = 2 * stride, values.size - 2 * stride
    normalized = np.abs(residual) / scale
    normalized[:lo] = normalized[lo]
    normalized[hi:] = normalized[hi - 1]
    return normalized, float(np.max(normalized[lo:hi]))


def finite_difference_residual(prob: RadialProblem, grid: np.ndarray,
                               values: np.ndarray, param_step: float,
                               s: Optional[np.ndarray]):
    """Normalized residual of the radial equation from grid values alone.

    All derivatives come from finite differences of ``values`` on the
    uniformly-spaced grid parameter (r itself, or ln(r - r_s)); nothing from
    the integrator enters.  The stencil stride is chosen to balance
    truncation against roundoff by taking the sharpest of a fixed ladder.
    Residuals are relative to the largest equation-term magnitude on the
    grid.  Returns (residual_array, max_normalized).
    """
    best = None
    for stride in (1, 2, 4, 8, 16):
        if values.size < 4 * stride + 9:
            break
        cand = _residual_at_stride(prob, grid, values, param_step, s, stride)
        if best is None or cand[1] < best[1]:
            best = cand
    return best


def solve_radial(prob: RadialProblem, rel_tol: float,
                 n_points: Optional[int] = None) -> RadialSolution:
    """Integrate the radial problem with local error control <= rel_tol.

    Deterministic for a fixed (problem, rel_tol).  Raises
    ``NearHorizonError`` when stepping collapses at a start too close to
    the horizon and ``BlowUpError`` when the state leaves finite range.
    """
    if not (1e-12 <= rel_tol <= 1e-4):
        raise ValueError(f"rel_tol must lie in [1e-12, 1e-4], got {rel_tol}")

    rs = prob.metric.r_s
    l2 = prob.ell * (prob.ell + 1)
    a_sq, e_sq = prob.alpha_prime_sq, prob.eta_prime**2

    def rhs(r, y):
        x = 1.0 - rs / r
        c1 = 2.0 / r + rs / (r**2 * x)
        c0 = (a_sq + e_sq / x - l2 / r**2) / x
        return (y[1], -(c1 * y[1] + c0 * y[0]))

    y0 = np.array([prob.init_value, prob.init_slope])
    if not np.iscomplexobj(y0):
        y0 = y0.astype(float)
    # absolute floors scaled per component: slopes carry an extra factor of
    # the sharpest inverse length in the problem
    span = prob.r_end - prob.r_start
    kappa = max(_characteristic_wavenumber(prob), 1.0 / span)
    if rs > 0.0:
        kappa = max(kappa, abs(prob.eta_prime) * rs / (prob.r_start - rs))
    sigma = max(abs(prob.init_value), abs(prob.init_slope) / kappa, 1e-300)
    atol = rel_tol * 1e-3 * np.array([sigma, sigma * kappa])
    sol = solve_ivp(
        rhs,
        (prob.r_start, prob.r_end),
        y0,
        method="DOP853",
        rtol=rel_tol,
        atol=atol,
        dense_output=True,
    )
    if not np.all(np.isfinite(sol.y)):
        finite = np.all(np.isfinite(sol.y), axis=0)
        last_good = float(sol.t[finite][-1]) if np.any(finite) else prob.r_start
        raise BlowUpError(
            f"radial integration left finite range near r = {last_good}",
            last_good_r=last_good,
        )
    if not sol.success:
        last = float(sol.t[-1]) if sol.t.size else prob.r_start
        if (prob.r_start - rs) < _LOG_GRID_THRESHOLD * max(rs, 1e-300):
            raise NearHorizonError(
                f"integration stalled at r = {last}; r_start = {prob.r_start} is too "
                f"close to the horizon r_s = {rs}, increase r_start"
            )
        raise BlowUpError(f"integration failed at r = {last}: {sol.message}",
                          last_good_r=last)

    grid, step, s = _build_grid(prob, n_points)
    dense = sol.sol(grid)
    values, slopes = dense[0], dense[1]
    residuals, max_residual = finite_difference_residual(prob, grid, values, step, s)
    return RadialSolution(
        grid=grid,
        values=values,
        slopes=slopes,
        residuals=residuals,
        max_residual=max_residual,
        problem=prob,
    )


def wronskian(sol_a: RadialSolution, sol_b: RadialSolution) -> np.ndarray:
    """r^2 (1 - r_s/r) (R_a R_b' - R_b R_a') on the shared grid.

    Constant along r for two solutions of the same radial equation; drift
    measures solver error independently of any closed form.
    """
    if sol_a.grid.shape != sol_b.grid.shape or not np.allclose(sol_a.grid, sol_b.grid):
        raise ValueError("Wronskian requires solutions on the same grid")
    r = sol_a.grid
    x = 1.0 - sol_a.problem.metric.r_s / r
    return r**2 * x * (sol_a.values * sol_b.slopes - sol_b.values * sol_a.slopes)


def flat_limit_deviation(prob: RadialProblem, rel_tol: float) -> float:
    """Sup-norm relative gap to the r_s = 0 solution matched at r_start.

    The far-field window must satisfy r_start >= 100 r_s so the comparison
    probes the advertised 1 >> r_s/r regime.
    """
    rs = prob.metric.r_s
    if rs > 0.0 and prob.r_start < 100.0 * rs:
        raise ValueError(
            f"far-field window requires r_start >= 100 r_s = {100.0 * rs}, "
            f"got {prob.r_start}"
        )
    sol_curved = solve_radial(prob, rel_tol)
    flat_prob = dataclasses.replace(prob, metric=MetricSpec.minkowski())
    sol_flat = solve_radial(flat_prob, rel_tol)
    gap = np.max(np.abs(sol_curved.values - sol_flat.values))
    return float(gap / np.max(np.abs(sol_flat.values)))


def near_horizon_start(prob: RadialProblem, delta: float):
    """Series-consistent initial data (value, slope) at r = r_s (1 + delta).

    eta' = 0: analytic branch R = 1 + a1 (r - r_s) with
    a1 = l(l+1)/r_s - r_s alpha'^2.  eta' != 0: the real standing-wave
    combination of the Frobenius pair (r - r_s)^{+-i eta' r_s}, oscillatory
    in ln(r - r_s).
    """
    if not (1e-8 <= delta <= 1e-2):
        raise ValueError(f"delta must lie in [1e-8, 1e-2], got {delta}")
    rs = prob.metric.r_s
    if not rs > 0.0:
        raise ValueError("near-horizon start requires a Schwarzschild metric with r_s > 0")
    s0 = rs * delta
    if prob.eta_prime == 0.0:
        a1 = prob.ell * (prob.ell + 1) / rs - rs * prob.alpha_prime_sq
        return 1.0 + a1 * s0, a1
    w = prob.eta_prime * rs
    phase = w * np.log(s0)
    return float(np.cos(phase)), float(-w * np.sin(phase) / s0)
