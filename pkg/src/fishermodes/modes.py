"""Closed-form separable modes on the spherical Minkowski background.

Two families:

* free modes  R(r) = A j_l(k r), with the wavenumber snapped to a Dirichlet
  box value k = z_{l,n}/r_box (z = n-th zero of j_l), so every mode is
  normalizable on the truncated domain and distinct radial indices are
  orthogonal;
* localized modes  R(r) = B r^l exp(-beta r^2/2) L_n^{l+1/2}(beta r^2),
  the branch regular at the origin, with the termination condition
  alpha^2 + eta^2 = beta (4n + 2l + 3).

Both satisfy  d2_tau Psi - laplacian(Psi) + beta^2 r^2 Psi = alpha^2 Psi
with Psi = T(tau) R(r) Theta(theta) Phi(phi), T = exp(-i eta tau),
Phi = exp(i m phi).  ``pde_residual`` checks exactly that, using analytic
second derivatives assembled from recurrence identities.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import (
    CoordinateSingularityError,
    EvanescentModeError,
    UnsupportedIndexError,
)
from .geometry import CoordPoint, MetricSpec
from .quadrature import Domain, integrate
from .specfun import (
    AngularIndex,
    _theta_factor_with_derivs,
    generalized_laguerre,
    spherical_bessel_j,
    spherical_bessel_j_derivs,
    spherical_bessel_zero,
    spherical_harmonic,
)

__all__ = [
    "ModeSpec",
    "LocalizationConstraint",
    "ModeFunction",
    "make_free_mode",
    "make_localized_mode",
    "pde_residual",
    "kg_alpha_sq",
    "multiplier_fields",
    "free_mode_wavenumber",
    "localized_alpha_sq",
    "mode_record",
    "mode_from_record",
    "expectation",
]

COORDS = ("tau", "r", "theta", "phi")


@dataclass(frozen=True)
class ModeSpec:
    """Quantum numbers and multipliers selecting one separable solution.

    ``beta == 0`` selects the free (Bessel) family, ``beta > 0`` the
    localized (Laguerre) family.  ``alpha_sq`` may be None before
    construction; the constructors fill in the value consistent with the
    quantization condition.  ``norm`` is set by the constructors.
    """

    eta: float
    idx: AngularIndex
    alpha_sq: Optional[float] = None
    beta: float = 0.0
    n_radial: int = 1
    norm: Optional[float] = None

    def __post_init__(self):
        if self.beta < 0:
            raise ValueError(f"beta must be >= 0, got {self.beta}")
        if self.n_radial < 0:
            raise ValueError(f"n_radial must be >= 0, got {self.n_radial}")
        if self.norm is not None and not self.norm > 0:
            raise ValueError(f"norm must be positive, got {self.norm}")

    @property
    def family(self) -> str:
        return "free" if self.beta == 0.0 else "localized"

    @staticmethod
    def free(eta: float, ell: int, m: int, n_radial: int,
             alpha_sq: Optional[float] = None) -> "ModeSpec":
        return ModeSpec(eta=eta, idx=AngularIndex(ell, m), alpha_sq=alpha_sq,
                        beta=0.0, n_radial=n_radial)

    @staticmethod
    def localized(eta: float, ell: int, m: int, beta: float,
                  n_radial: int) -> "ModeSpec":
        return ModeSpec(eta=eta, idx=AngularIndex(ell, m),
                        alpha_sq=localized_alpha_sq(beta, n_radial, ell, eta),
                        beta=beta, n_radial=n_radial)


@dataclass(frozen=True)
class LocalizationConstraint:
    """Radial localization target <r^2> = sigma_r^2, referenced to the origin."""

    sigma_r: float
    reference: str = "origin"

    def __post_init__(self):
        if not self.sigma_r > 0:
            raise ValueError(f"sigma_r must be positive, got {self.sigma_r}")


@dataclass(frozen=True)
class ModeFunction:
    """Evaluable separable wave function with analytic partial derivatives.

    ``evaluator(p)`` returns Psi at p; ``partials(coord, p)`` and
    ``second_partials(coord, p)`` return d Psi/d coord and d^2 Psi/d coord^2
    for coord in ("tau", "r", "theta", "phi").  Derivatives require interior
    points (r > 0, theta strictly inside (0, pi)).
    """

    spec: ModeSpec
    metric: MetricSpec
    domain: Domain
    evaluator: Callable[[CoordPoint], np.ndarray]
    partials: Callable[[str, CoordPoint], np.ndarray]
    second_partials: Callable[[str, CoordPoint], np.ndarray]

    def __call__(self, p: CoordPoint):
        return self.evaluator(p)


def free_mode_wavenumber(ell: int, n_radial: int, r_box: float) -> float:
    """Dirichlet-quantized wavenumber k = z_{ell,n}/r_box."""
    if n_radial < 1:
        raise ValueError(f"free modes need n_radial >= 1, got {n_radial}")
    return spherical_bessel_zero(ell, n_radial) / r_box


def localized_alpha_sq(beta: float, n_radial: int, ell: int, eta: float = 0.0) -> float:
    """Multiplier sum from Laguerre-series termination: beta(4n+2l+3) - eta^2."""
    return beta * (4 * n_radial + 2 * ell + 3) - eta**2


def kg_alpha_sq(mu: float, hbar: float = 1.0, c: float = 1.0) -> float:
    """Mass-shell value alpha^2 = -(mu c / hbar)^2 for a rest mass mu >= 0."""
    if mu < 0:
        raise ValueError(f"rest mass must be >= 0, got {mu}")
    return -((mu * c / hbar) ** 2)


def multiplier_fields(spec: ModeSpec, p: CoordPoint):
    """Position-dependent multiplier fields (kappa1^2, kappa2^2, kappa3^2).

    kappa1^2 = alpha^2 + eta^2 - beta^2 r^2 - l(l+1)/r^2
    kappa2^2 = [l(l+1) - m^2/sin^2(theta)] / r^2
    kappa3^2 = m^2 / (r^2 sin^2(theta))

    The eta^2 term closes the radial constraint for time-dependent modes
    (the static determination is recovered at eta = 0); the -beta^2 r^2
    term covers the localized family and vanishes for free modes.
    """
    r = np.asarray(p.r, dtype=float)
    theta = np.asarray(p.theta, dtype=float)
    if np.any(r <= 0.0):
        raise CoordinateSingularityError("multiplier fields require r > 0")
    sin_sq = np.sin(theta) ** 2
    if np.any(sin_sq <= 1e-30):
        raise CoordinateSingularityError("multiplier fields require theta in (0, pi)")
    ell, m = spec.idx.ell, spec.idx.m
    l2 = ell * (ell + 1)
    k1 = spec.alpha_sq + spec.eta**2 - spec.beta**2 * r**2 - l2 / r**2
    k2 = (l2 - m**2 / sin_sq) / r**2
    k3 = m**2 / (r**2 * sin_sq)
    return k1, k2, k3


def _assemble(spec: ModeSpec, domain: Domain,
              radial: Callable, radial_d1: Callable, radial_d2: Callable) -> ModeFunction:
    idx = spec.idx
    eta, m = spec.eta, spec.idx.m

    def _angular_value(theta):
        # value-only path stays finite on the polar axis
        return spherical_harmonic(idx, theta, 0.0)

    def evaluator(p: CoordPoint):
        t_fac = np.exp(-1j * eta * np.asarray(p.tau, dtype=float))
        phi_fac = np.exp(1j * m * np.asarray(p.phi, dtype=float))
        return radial(np.asarray(p.r, dtype=float)) * _angular_value(np.asarray(p.theta, dtype=float)) * phi_fac * t_fac

    def partials(coord: str, p: CoordPoint):
        if coord == "tau":
            return -1j * eta * evaluator(p)
        if coord == "phi":
            return 1j * m * evaluator(p)
        r = np.asarray(p.r, dtype=float)
        theta = np.asarray(p.theta, dtype=float)
        t_fac = np.exp(-1j * eta * np.asarray(p.tau, dtype=float))
        phi_fac = np.exp(1j * m * np.asarray(p.phi, dtype=float))
        th0, th1, _ = _theta_factor_with_derivs(idx, theta)
        if coord == "r":
            return radial_d1(r) * th0 * phi_fac * t_fac
        if coord == "theta":
            return radial(r) * th1 * phi_fac * t_fac
        raise ValueError(f"unknown coordinate {coord!r}")

    def second_partials(coord: str, p: CoordPoint):
        if coord == "tau":
            return -(eta**2) * evaluator(p)
        if coord == "phi":
            return -(m**2) * evaluator(p)
        r = np.asarray(p.r, dtype=float)
        theta = np.asarray(p.theta, dtype=float)
        t_fac = np.exp(-1j * eta * np.asarray(p.tau, dtype=float))
        phi_fac = np.exp(1j * m * np.asarray(p.phi, dtype=float))
        th0, _, th2 = _theta_factor_with_derivs(idx, theta)
        if coord == "r":
            return radial_d2(r) * th0 * phi_fac * t_fac
        if coord == "theta":
            return radial(r) * th2 * phi_fac * t_fac
        raise ValueError(f"unknown coordinate {coord!r}")

    return ModeFunction(
        spec=spec,
        metric=MetricSpec.minkowski(),
        domain=domain,
        evaluator=evaluator,
        partials=partials,
        second_partials=second_partials,
    )


def _normalize(spec_final: ModeSpec, domain: Domain, radial_unit, radial_d1_unit,
               radial_d2_unit) -> ModeFunction:
    probe = _assemble(spec_final, domain, radial_unit, radial_d1_unit, radial_d2_unit)
    metric = MetricSpec.minkowski()
    raw = integrate(metric, domain, lambda p: np.abs(probe.evaluator(p)) ** 2)
    norm = 1.0 / np.sqrt(raw)
    spec_n = dataclasses.replace(spec_final, norm=norm)
    return _assemble(
        spec_n,
        domain,
        lambda r: norm * radial_unit(r),
        lambda r: norm * radial_d1_unit(r),
        lambda r: norm * radial_d2_unit(r),
    )


def make_free_mode(spec: ModeSpec, box: Domain) -> ModeFunction:
    """Free mode with R = A j_l(k r), k snapped to the n-th Dirichlet value.

    The requested (alpha_sq, eta) must describe an oscillatory mode,
    alpha_sq + eta^2 > 0 (alpha_sq = None skips the request and takes the
    quantized value directly).  The stored alpha_sq is k^2 - eta^2.
    """
    if spec.beta != 0.0:
        raise ValueError("free modes require beta = 0")
    if box.r_min != 0.0:
        raise ValueError("free-mode box must start at r = 0")
    if spec.alpha_sq is not None and spec.alpha_sq + spec.eta**2 <= 0.0:
        raise EvanescentModeError(
            f"alpha_sq + eta^2 = {spec.alpha_sq + spec.eta**2} <= 0 has no "
            "oscillatory radial solution"
        )
    ell = spec.idx.ell
    k = free_mode_wavenumber(ell, spec.n_radial, box.r_max)
    spec_final = dataclasses.replace(spec, alpha_sq=k**2 - spec.eta**2)

    def radial(r):
        return spherical_bessel_j(ell, k * r)

    def radial_d1(r):
        _, d1, _ = spherical_bessel_j_derivs(ell, k * r)
        return k * d1

    def radial_d2(r):
        _, _, d2 = spherical_bessel_j_derivs(ell, k * r)
        return k**2 * d2

    return _normalize(spec_final, box, radial, radial_d1, radial_d2)


def make_localized_mode(spec: ModeSpec, constraint: LocalizationConstraint,
                        dom: Optional[Domain] = None) -> ModeFunction:
    """Localized mode R = B r^l exp(-beta r^2/2) L_n^{l+1/2}(beta r^2).

    This is the branch regular at the origin; it satisfies the radial
    equation exactly when alpha_sq + eta^2 = beta (4n + 2l + 3), which is
    enforced here (a mismatched alpha_sq implies a non-integer Laguerre
    index and is rejected).
    """
    if not spec.beta > 0.0:
        raise ValueError("localized modes require beta > 0")
    beta, ell, n = spec.beta, spec.idx.ell, spec.n_radial
    expected = localized_alpha_sq(beta, n, ell, spec.eta)
    if spec.alpha_sq is None:
        spec = dataclasses.replace(spec, alpha_sq=expected)
    elif abs(spec.alpha_sq - expected) > 1e-9 * max(1.0, abs(expected)):
        implied = ((spec.alpha_sq + spec.eta**2) / beta - 2 * ell - 3) / 4.0
        raise UnsupportedIndexError(
            f"alpha_sq = {spec.alpha_sq} implies Laguerre index {implied}, "
            f"not the integer n_radial = {n}; quantized value is {expected}"
        )
    spec = dataclasses.replace(spec, alpha_sq=expected)

    r_cut = max(10.0 / np.sqrt(beta), 8.0 * constraint.sigma_r)
    if dom is None:
        dom = Domain(0.0, r_cut, n_r=96, n_theta=24, n_phi=16)
    a_lag = ell + 0.5

    def radial(r):
        r = np.asarray(r, dtype=float)
        u = beta * r**2
        return r**ell * np.exp(-0.5 * u) * generalized_laguerre(n, a_lag, u)

    def radial_d1(r):
        r = np.asarray(r, dtype=float)
        u = beta * r**2
        p0 = generalized_laguerre(n, a_lag, u)
        p1 = -generalized_laguerre(n - 1, a_lag + 1.0, u) if n >= 1 else np.zeros_like(u)
        g = ell * p0 + 2.0 * u * p1 - u * p0
        return np.exp(-0.5 * u) * r ** (ell - 1) * g

    def radial_d2(r):
        r = np.asarray(r, dtype=float)
        u = beta * r**2
        p0 = generalized_laguerre(n, a_lag, u)
        p1 = -generalized_laguerre(n - 1, a_lag + 1.0, u) if n >= 1 else np.zeros_like(u)
        p2 = generalized_laguerre(n - 2, a_lag + 2.0, u) if n >= 2 else np.zeros_like(u)
        g = ell * p0 + 2.0 * u * p1 - u * p0
        dg = ell * p1 + 2.0 * p1 + 2.0 * u * p2 - p0 - u * p1
        return np.exp(-0.5 * u) * r ** (ell - 2) * ((ell - 1.0) * g + 2.0 * u * dg - u * g)

    return _normalize(spec, dom, radial, radial_d1, radial_d2)


def pde_residual(mode: ModeFunction, p: CoordPoint):
    """Normalized residual of the separable-mode field equation at p.

    Evaluates | d2_tau Psi - laplacian(Psi) + beta^2 r^2 Psi - alpha^2 Psi |
    divided by max(|alpha^2 Psi|, 1e-30), from analytic derivatives.
    """
    r = np.asarray(p.r, dtype=float)
    theta = np.asarray(p.theta, dtype=float)
    sin_t = np.sin(theta)
    if np.any(sin_t <= 1e-15) or np.any(r <= 0.0):
        raise CoordinateSingularityError("pde_residual requires an interior point")
    spec = mode.spec
    psi = mode.evaluator(p)
    d2tau = mode.second_partials("tau", p)
    lap = (
        mode.second_partials("r", p)
        + 2.0 / r * mode.partials("r", p)
        + (mode.second_partials("theta", p) + np.cos(theta) / sin_t * mode.partials("theta", p)) / r**2
        + mode.second_partials("phi", p) / (r**2 * sin_t**2)
    )
    res = d2tau - lap + spec.beta**2 * r**2 * psi - spec.alpha_sq * psi
    scale = np.maximum(np.abs(spec.alpha_sq * psi), 1e-30)
    out = np.abs(res) / scale
    return float(out) if np.ndim(out) == 0 else out


def expectation(mode: ModeFunction, field: Callable[[CoordPoint], np.ndarray],
                dom: Optional[Domain] = None) -> float:
    """<field> = integral of field * |Psi|^2 over the mode's domain."""
    dom = dom or mode.domain
    return integrate(
        mode.metric, dom,
        lambda p: field(p) * np.abs(mode.evaluator(p)) ** 2,
    )


def mode_record(mode: ModeFunction) -> dict:
    """JSON-ready record; round-trips through ``mode_from_record``."""
    spec, dom = mode.spec, mode.domain
    return {
        "family": spec.family,
        "eta": spec.eta,
        "ell": spec.idx.ell,
        "m": spec.idx.m,
        "alpha_sq": spec.alpha_sq,
        "beta": spec.beta,
        "n_radial": spec.n_radial,
        "norm": spec.norm,
        "domain": {
            "r_min": dom.r_min,
            "r_max": dom.r_max,
            "n_r": dom.n_r,
            "n_theta": dom.n_theta,
            "n_phi": dom.n_phi,
        },
    }


def mode_from_record(record: dict) -> ModeFunction:
    """Rebuild a mode from its record via the deterministic constructors."""
    d = record["domain"]
    dom = Domain(d["r_min"], d["r_max"], d["n_r"], d["n_theta"], d["n_phi"])
    spec = ModeSpec(
        eta=record["eta"],
        idx=AngularIndex(record["ell"], record["m"]),
        alpha_sq=record["alpha_sq"],
        beta=record["beta"],
        n_radial=record["n_radial"],
    )
    if record["family"] == "free":
        return make_free_mode(spec, dom)
    sigma = np.sqrt(3.0 / (2.0 * record["beta"]))  # nominal n=0, l=0 spread
    return make_localized_mode(spec, LocalizationConstraint(sigma_r=sigma), dom=dom)
