"""Diagonal background metrics and the coordinate weights derived from them.

Two backgrounds are supported: spherical Minkowski and Schwarzschild
(exterior only, r > r_s).  Natural units: the time coordinate is tau = c*t,
so metric components carry no explicit factors of c.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import CoordinateSingularityError, HorizonDomainError

__all__ = [
    "MetricKind",
    "MetricSpec",
    "CoordPoint",
    "metric_diag",
    "volume_weight",
    "gradient_weights",
    "local_energy_sq",
]


class MetricKind(enum.Enum):
    MINKOWSKI_SPHERICAL = "minkowski"
    SCHWARZSCHILD = "schwarzschild"


# sin(theta) at a floating-point representation of 0 or pi lands at ~1.2e-16,
# so "on the axis" means below this floor
SIN_THETA_FLOOR = 1e-15


@dataclass(frozen=True)
class MetricSpec:
    """Background selection: kind, horizon radius r_s, and speed of light."""

    kind: MetricKind
    r_s: float = 0.0
    c: float = 1.0

    def __post_init__(self):
        if self.r_s < 0:
            raise ValueError(f"r_s must be >= 0, got {self.r_s}")
        if self.kind is MetricKind.MINKOWSKI_SPHERICAL and self.r_s != 0.0:
            raise ValueError("Minkowski metric requires r_s = 0")
        if self.kind is MetricKind.SCHWARZSCHILD and self.r_s == 0.0:
            # r_s = 0 Schwarzschild is Minkowski; allow it as the flat limit
            pass

    @staticmethod
    def minkowski(c: float = 1.0) -> "MetricSpec":
        return MetricSpec(MetricKind.MINKOWSKI_SPHERICAL, 0.0, c)

    @staticmethod
    def schwarzschild(r_s: float, c: float = 1.0) -> "MetricSpec":
        return MetricSpec(MetricKind.SCHWARZSCHILD, r_s, c)


@dataclass(frozen=True)
class CoordPoint:
    """A point (tau, r, theta, phi); fields may be floats or broadcastable arrays."""

    tau: object = 0.0
    r: object = 1.0
    theta: object = np.pi / 2
    phi: object = 0.0


def _lapse(spec: MetricSpec, r):
    """1 - r_s/r, validated to be strictly positive."""
    r_arr = np.asarray(r, dtype=float)
    if np.any(r_arr <= spec.r_s):
        raise HorizonDomainError(
            f"metric evaluation requires r > r_s = {spec.r_s}; got min r = {np.min(r_arr)}"
        )
    return 1.0 - spec.r_s / r_arr


def metric_diag(spec: MetricSpec, p: CoordPoint):
    """Diagonal components (g_tt, g_rr, g_thth, g_phph) at p.

    Minkowski: (-1, 1, r^2, r^2 sin^2 theta).
    Schwarzschild: (-(1-r_s/r), (1-r_s/r)^-1, r^2, r^2 sin^2 theta).
    """
    r = np.asarray(p.r, dtype=float)
    x = _lapse(spec, r)
    sin_t = np.sin(np.asarray(p.theta, dtype=float))
    return -x, 1.0 / x, r**2, r**2 * sin_t**2


def volume_weight(spec: MetricSpec, p: CoordPoint):
    """sqrt(-det g) = r^2 sin(theta); the lapse factors cancel for both metrics."""
    _lapse(spec, p.r)
    r = np.asarray(p.r, dtype=float)
    return r**2 * np.sin(np.asarray(p.theta, dtype=float))


def gradient_weights(spec: MetricSpec, p: CoordPoint):
    """Per-coordinate gradient factors (w_tau, w_r, w_theta, w_phi).

    These are the positive roots of the inverse-metric magnitudes:
    ((1-r_s/r)^{-1/2}, (1-r_s/r)^{1/2}, 1/r, 1/(r sin theta)); the phi
    weight is singular on the polar axis, which is rejected.
    """
    r = np.asarray(p.r, dtype=float)
    x = _lapse(spec, r)
    sin_t = np.sin(np.asarray(p.theta, dtype=float))
    if np.any(sin_t <= SIN_THETA_FLOOR):
        raise CoordinateSingularityError(
            "phi gradient weight undefined at theta in {0, pi}"
        )
    sqrt_x = np.sqrt(x)
    return 1.0 / sqrt_x, sqrt_x, 1.0 / r, 1.0 / (r * sin_t)


def local_energy_sq(spec: MetricSpec, r, energy):
    """Squared energy seen by a static local observer: (1 - r_s/r) * E^2."""
    return _lapse(spec, r) * np.asarray(energy, dtype=float) ** 2
