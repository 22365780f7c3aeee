"""Fisher-metric quadratures and the per-coordinate constraint checks.

The reported matrix is Hermitian: entries[mu][nu] = Re integral of
(d Psi/d x^mu)* (d Psi/d x^nu) over the domain, with the tau row taken
analytically from the factor exp(-i eta tau) (|T|^2 = 1 makes quadrature
over tau unnecessary).  Expected values are the constraint right-hand
sides <kappa_mu^2 |g_mumu|> with the 1/4 absorbed into the multipliers.
Imaginary parts are carried as diagnostics, not folded into the entries.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import NormalizationError
from .geometry import CoordPoint, MetricSpec, metric_diag
from .modes import ModeFunction, multiplier_fields
from .quadrature import Domain, grid_nodes

__all__ = [
    "FisherReport",
    "ConstraintResult",
    "fisher_matrix",
    "constraint_check",
    "statistical_distance",
]

_COORDS = ("tau", "r", "theta", "phi")
NORMALIZATION_TOL = 1e-6


@dataclass(frozen=True)
class FisherReport:
    """4x4 Fisher quadratures with constraint expectations and residuals."""

    entries: np.ndarray
    expected: np.ndarray
    residuals: np.ndarray
    imag_parts: np.ndarray
    domain: Domain
    mode_spec: object
    passed: bool
    tol: float
    offdiag_tol: float

    def to_json_dict(self) -> dict:
        from .modes import ModeSpec

        spec: ModeSpec = self.mode_spec
        return {
            "mode": {
                "family": spec.family,
                "eta": spec.eta,
                "ell": spec.idx.ell,
                "m": spec.idx.m,
                "alpha_sq": spec.alpha_sq,
                "beta": spec.beta,
                "n_radial": spec.n_radial,
                "norm": spec.norm,
            },
            "domain": {
                "r_min": self.domain.r_min,
                "r_max": self.domain.r_max,
                "n_r": self.domain.n_r,
                "n_theta": self.domain.n_theta,
                "n_phi": self.domain.n_phi,
            },
            "entries": self.entries.tolist(),
            "expected": self.expected.tolist(),
            "residuals": self.residuals.tolist(),
            "imag_parts": self.imag_parts.tolist(),
            "pass": self.passed,
        }


def _mode_grids(mode: ModeFunction, dom: Domain):
    """Grid nodes, integration weight, |psi|^2 and the spatial partials."""
    (r, theta, phi), w = grid_nodes(dom)
    p = CoordPoint(tau=0.0, r=r, theta=theta, phi=phi)
    # u = cos(theta) substitution: sqrt(-g) dtheta -> r^2 du for both metrics
    shape = (dom.n_r, dom.n_theta, dom.n_phi)
    wgt = np.broadcast_to(r**2 * w, shape)
    psi = np.broadcast_to(mode.evaluator(p), shape)
    parts = {c: np.broadcast_to(mode.partials(c, p), shape) for c in ("r", "theta", "phi")}
    return p, wgt, psi, parts


def _check_normalized(n0: float):
    if abs(n0 - 1.0) > NORMALIZATION_TOL:
        raise NormalizationError(
            f"mode is not unit-normalized on the domain: integral |Psi|^2 = {n0!r}"
        )


def fisher_matrix(mode: ModeFunction, dom: Optional[Domain] = None,
                  tol: float = 1e-6, offdiag_tol: float = 1e-8) -> FisherReport:
    """Hermitian Fisher matrix of coordinate partials, with expectations.

    The mode must be unit-normalized on ``dom`` (checked, not repaired).
    Off-diagonal expectations are zero: a diagonal background metric admits
    no cross terms, so any surviving off-diagonal entry is reported as a
    violation.  Modes rotating in both tau and phi (eta != 0 and m != 0)
    genuinely produce entries[tau][phi] = -eta*m and therefore fail.
    """
    dom = dom or mode.domain
    eta = mode.spec.eta
    p, wgt, psi, parts = _mode_grids(mode, dom)
    n0 = float(np.sum(np.abs(psi) ** 2 * wgt))
    _check_normalized(n0)

    gram = np.zeros((4, 4), dtype=complex)
    # spatial block
    for i, ci in enumerate(_COORDS[1:], start=1):
        for j, cj in enumerate(_COORDS[1:], start=1):
            if j < i:
                continue
            gram[i, j] = np.sum(np.conj(parts[ci]) * parts[cj] * wgt)
            gram[j, i] = np.conj(gram[i, j])
    # tau row: d_tau Psi = -i eta Psi, so (d_tau Psi)* d_nu Psi = i eta Psi* d_nu Psi
    gram[0, 0] = eta**2 * n0
    for j, cj in enumerate(_COORDS[1:], start=1):
        s_j = np.sum(np.conj(psi) * parts[cj] * wgt)
        gram[0, j] = 1j * eta * s_j
        gram[j, 0] = np.conj(gram[0, j])

    entries = gram.real.copy()
    imag_parts = gram.imag.copy()

    k1, k2, k3 = multiplier_fields(mode.spec, p)
    g_tt, g_rr, g_thth, g_phph = metric_diag(mode.metric, p)
    dens = np.abs(psi) ** 2 * wgt
    expected = np.zeros((4, 4))
    expected[0, 0] = eta**2 * float(np.sum(np.abs(g_tt) * dens))
    expected[1, 1] = float(np.sum(k1 * g_rr * dens))
    expected[2, 2] = float(np.sum(k2 * g_thth * dens))
    expected[3, 3] = float(np.sum(k3 * g_phph * dens))

    scale = max(np.max(np.abs(expected)), 1e-30)
    denom = np.where(np.abs(expected) > 1e-12 * scale, np.abs(expected), scale)
    residuals = (entries - expected) / denom

    diag_ok = all(abs(residuals[i, i]) <= tol for i in range(4))
    off = ~np.eye(4, dtype=bool)
    offdiag_ok = np.max(np.abs(entries[off])) / scale <= offdiag_tol
    return FisherReport(
        entries=entries,
        expected=expected,
        residuals=residuals,
        imag_parts=imag_parts,
        domain=dom,
        mode_spec=mode.spec,
        passed=bool(diag_ok and offdiag_ok),
        tol=tol,
        offdiag_tol=offdiag_tol,
    )


@dataclass(frozen=True)
class ConstraintResult:
    coord: str
    lhs: float
    rhs: float
    residual: float
    passed: bool


def constraint_check(mode: ModeFunction, metric: Optional[MetricSpec] = None,
                     dom: Optional[Domain] = None, tol: float = 1e-6):
    """Per-coordinate constraint residuals (tau handled analytically).

    For each coordinate the check is
    integral[ kappa_mu^2 |g_mumu| |Psi|^2 - |d_mu Psi|^2 ] = 0
    with the multiplier fields from the mode's quantum numbers.  Returns a
    list of four ConstraintResult records in (tau, r, theta, phi) order.
    """
    metric = metric or mode.metric
    dom = dom or mode.domain
    eta, m = mode.spec.eta, mode.spec.idx.m
    p, wgt, psi, parts = _mode_grids(mode, dom)
    n0 = float(np.sum(np.abs(psi) ** 2 * wgt))
    _check_normalized(n0)

    dens = np.abs(psi) ** 2 * wgt
    k1, k2, k3 = multiplier_fields(mode.spec, p)
    g_tt, g_rr, g_thth, g_phph = metric_diag(metric, p)

    lhs = {
        "tau": eta**2 * n0,
        "r": float(np.sum(np.abs(parts["r"]) ** 2 * wgt)),
        "theta": float(np.sum(np.abs(parts["theta"]) ** 2 * wgt)),
        "phi": m**2 * n0,
    }
    rhs = {
        "tau": eta**2 * float(np.sum(np.abs(g_tt) * dens)),
        "r": float(np.sum(k1 * g_rr * dens)),
        "theta": float(np.sum(k2 * g_thth * dens)),
        "phi": float(np.sum(k3 * g_phph * dens)),
    }
    scale = max(max(abs(v) for v in lhs.values()), max(abs(v) for v in rhs.values()), 1e-30)
    results = []
    for coord in _COORDS:
        denom = max(abs(lhs[coord]), abs(rhs[coord]))
        denom = denom if denom > 1e-12 * scale else scale
        residual = (lhs[coord] - rhs[coord]) / denom
        results.append(
            ConstraintResult(
                coord=coord,
                lhs=lhs[coord],
                rhs=rhs[coord],
                residual=residual,
                passed=bool(abs(residual) <= tol),
            )
        )
    return results


def statistical_distance(rho_a, rho_b) -> float:
    """Geodesic distinguishability distance 2*arccos(sum sqrt(rho_a rho_b)).

    Both arguments must be strictly positive distributions on the same
    support, each summing to 1 within 1e-12.  Identical inputs return 0.0
    exactly (Cauchy-Schwarz equality); the maximum, for disjoint support
    in the limit, is pi.
    """
    a = np.asarray(rho_a, dtype=float)
    b = np.asarray(rho_b, dtype=float)
    if a.shape != b.shape:
        raise ValueError(f"support sizes differ: {a.shape} vs {b.shape}")
    if np.any(a <= 0.0) or np.any(b <= 0.0):
        raise ValueError("distributions must be strictly positive in every cell")
    for name, d in (("rho_a", a), ("rho_b", b)):
        s = float(np.sum(d))
        if abs(s - 1.0) > 1e-12:
            raise ValueError(f"{name} sums to {s!r}, not 1 within 1e-12")
    if np.array_equal(a, b):
        return 0.0
    overlap = float(np.sum(np.sqrt(a * b)))
    return 2.0 * float(np.arccos(np.clip(overlap, -1.0, 1.0)))
