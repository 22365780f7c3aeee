"""Deterministic quadrature over a truncated (r, theta, phi) domain.

Rules: Gauss-Legendre in r, Gauss-Legendre in u = cos(theta), uniform
midpoint rule in phi (exact for trigonometric polynomials of degree
< n_phi).  All nodes are interior, so the coordinate singularities at
theta in {0, pi} and r = 0 are never sampled.  The tau direction is left
to callers: every mode here is e^{-i eta tau} with |T|^2 = 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .errors import NonFiniteSampleError, QuadratureConvergenceError
from .geometry import CoordPoint, MetricSpec, volume_weight

__all__ = ["Domain", "integrate", "converged_integrate", "ConvergedResult", "grid_nodes"]


@dataclass(frozen=True)
class Domain:
    """Truncated radial ball [r_min, r_max] with per-axis node counts."""

    r_min: float
    r_max: float
    n_r: int = 64
    n_theta: int = 24
    n_phi: int = 16

    def __post_init__(self):
        if not (0.0 <= self.r_min < self.r_max):
            raise ValueError(f"need 0 <= r_min < r_max, got [{self.r_min}, {self.r_max}]")
        if min(self.n_r, self.n_theta, self.n_phi) < 8:
            raise ValueError("all node counts must be >= 8")

    def refined(self, factor: int = 2) -> "Domain":
        return Domain(self.r_min, self.r_max,
                      self.n_r * factor, self.n_theta * factor, self.n_phi * factor)


def grid_nodes(dom: Domain):
    """Nodes as broadcastable (r, theta, phi) arrays plus the bare product weight.

    The weight covers dr du dphi only; the volume element is applied by
    ``integrate``.
    """
    xr, wr = np.polynomial.legendre.leggauss(dom.n_r)
    r = 0.5 * (dom.r_max - dom.r_min) * (xr + 1.0) + dom.r_min
    wr = 0.5 * (dom.r_max - dom.r_min) * wr

    xu, wu = np.polynomial.legendre.leggauss(dom.n_theta)
    theta = np.arccos(xu)

    phi = 2.0 * np.pi * (np.arange(dom.n_phi) + 0.5) / dom.n_phi
    wphi = 2.0 * np.pi / dom.n_phi

    weight = wr[:, None, None] * wu[None, :, None] * wphi
    return (r[:, None, None], theta[None, :, None], phi[None, None, :]), weight


def integrate(spec: MetricSpec, dom: Domain, f: Callable[[CoordPoint], np.ndarray]):
    """Integral of f * sqrt(-g) over the domain (tau slice at 0).

    f receives one CoordPoint whose fields are broadcastable arrays and must
    return a broadcastable scalar field.  A non-finite sample aborts with
    the offending node attached to the exception.
    """
    (r, theta, phi), weight = grid_nodes(dom)
    p = CoordPoint(tau=0.0, r=r, theta=theta, phi=phi)
    shape = (dom.n_r, dom.n_theta, dom.n_phi)
    vals = np.broadcast_to(np.asarray(f(p)), shape)
    if not np.all(np.isfinite(vals)):
        idx = np.argwhere(~np.isfinite(vals))[0]
        i, j, k = (int(v) for v in idx)
        node = (float(r[i, 0, 0]), float(theta[0, j, 0]), float(phi[0, 0, k]))
        raise NonFiniteSampleError(
            f"non-finite integrand sample at (r, theta, phi) = {node}", node=node
        )
    # sqrt(-g) dtheta = r^2 sin(theta) dtheta = r^2 du; the horizon check rides
    # along with volume_weight.
    vol = volume_weight(spec, p) / np.sin(theta)
    total = np.sum(vals * vol * weight)
    return complex(total) if np.iscomplexobj(vals) else float(total)


class ConvergedResult(NamedTuple):
    value: float
    achieved: float
    refinements: int


def converged_integrate(spec: MetricSpec, dom: Domain, f, rel_tol: float) -> ConvergedResult:
    """Refine by doubling all node counts until successive estimates agree.

    At most 4 refinements.  rel_tol below 1e-14 is unreachable in double
    precision and fails as a convergence error immediately; above 1e-3 is
    rejected as a configuration error.
    """
    if rel_tol > 1e-3:
        raise ValueError(f"rel_tol must be <= 1e-3, got {rel_tol}")
    if rel_tol < 1e-14:
        raise QuadratureConvergenceError(
            f"rel_tol = {rel_tol} is below double-precision feasibility (1e-14)"
        )
    estimates = [integrate(spec, dom, f)]
    for k in range(1, 5):
        dom = dom.refined()
        estimates.append(integrate(spec, dom, f))
        cur, prev = estimates[-1], estimates[-2]
        scale = max(abs(cur), abs(prev))
        diff = abs(cur - prev) / scale if scale > 0.0 else 0.0
        if diff < rel_tol:
            return ConvergedResult(cur, diff, k)
    raise QuadratureConvergenceError(
        f"no convergence to {rel_tol} after 4 refinements: "
        f"last={estimates[-1]!r}, previous={estimates[-2]!r}",
        last=estimates[-1],
        previous=estimates[-2],
    )
