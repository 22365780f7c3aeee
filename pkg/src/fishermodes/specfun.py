"""Special functions used by the closed-form separable modes.

Conventions are pinned here once:

* ``spherical_bessel_j`` switches between a truncated power series
  (|x| < 0.5*(ell+1)), upward recurrence (x >= ell) and Miller's downward
  recurrence (in between), which keeps every branch stable in double
  precision.
* ``assoc_legendre`` returns the positive (Rodrigues) convention P_l^m,
  i.e. *without* the Condon-Shortley phase.  The (-1)^m sign lives in
  ``spherical_harmonic``, where it is applied as an explicit prefactor.
* ``generalized_laguerre`` is the plain three-term recurrence, integer
  degree only.

All functions are pure, accept scalars or numpy arrays, and return the
matching shape.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .errors import CoordinateSingularityError, UnsupportedIndexError

__all__ = [
    "AngularIndex",
    "spherical_bessel_j",
    "spherical_bessel_j_derivs",
    "spherical_bessel_zero",
    "assoc_legendre",
    "generalized_laguerre",
    "spherical_harmonic",
    "condon_shortley_sign",
]

_SERIES_TERMS = 60
_DOWNWARD_EXTRA = 30


@dataclass(frozen=True)
class AngularIndex:
    """Orbital / azimuthal index pair (ell, m) with |m| <= ell."""

    ell: int
    m: int

    def __post_init__(self):
        if self.ell < 0:
            raise ValueError(f"ell must be >= 0, got {self.ell}")
        if abs(self.m) > self.ell:
            raise ValueError(f"|m| <= ell violated: ell={self.ell}, m={self.m}")


def condon_shortley_sign(m: int) -> float:
    """(-1)^m for m >= 0 and +1 for m <= 0 (the harmonic's epsilon prefactor)."""
    return -1.0 if (m > 0 and m % 2 == 1) else 1.0


def _bessel_series(ell: int, x: np.ndarray) -> np.ndarray:
    # x^ell / (2ell+1)!! as a running product; avoids overflow for large ell
    lead = np.ones_like(x)
    for i in range(1, ell + 1):
        lead = lead * x / (2 * i + 1)
    half_xsq = 0.5 * x * x
    term = np.ones_like(x)
    acc = np.ones_like(x)
    for k in range(1, _SERIES_TERMS + 1):
        term = term * (-half_xsq) / (k * (2 * ell + 2 * k + 1))
        acc = acc + term
    return lead * acc


def _bessel_upward(ell: int, x: np.ndarray) -> np.ndarray:
    jm1 = np.sin(x) / x
    if ell == 0:
        return jm1
    j = jm1 / x - np.cos(x) / x
    for l in range(1, ell):
        jm1, j = j, (2 * l + 1) / x * j - jm1
    return j


def _bessel_downward(ell: int, x: np.ndarray) -> np.ndarray:
    # Miller's algorithm: recur down from a padded order, then rescale by j_0.
    top = ell + _DOWNWARD_EXTRA
    p_up = np.zeros_like(x)          # order top+1
    p = np.full_like(x, 1e-30)       # order top
    p_ell = np.zeros_like(x)
    for m in range(top, 0, -1):
        p_up, p = p, (2 * m + 1) / x * p - p_up
        if m - 1 == ell:
            p_ell = p
    if ell == top:
        p_ell = np.full_like(x, 1e-30)
    return p_ell * (np.sin(x) / x) / p


def spherical_bessel_j(ell: int, x):
    """Spherical Bessel function j_ell(x), stable for all finite real x.

    Parameters
    ----------
    ell : int
        Order, >= 0.
    x : float or array_like
        Argument; must be finite.

    Returns
    -------
    float or numpy.ndarray
        j_ell(x), continuous at x = 0 with j_0(0) = 1 and j_ell(0) = 0
        for ell >= 1.
    """
    if ell < 0 or int(ell) != ell:
        raise UnsupportedIndexError(f"order must be a nonnegative integer, got {ell}")
    ell = int(ell)
    x_arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x_arr)):
        raise ValueError("spherical_bessel_j requires finite x")
    scalar = x_arr.ndim == 0
    x_arr = np.atleast_1d(x_arr)
    ax = np.abs(x_arr)

    out = np.empty_like(x_arr)
    series_mask = ax < 0.5 * (ell + 1)
    up_mask = (~series_mask) & (ax >= ell)
    down_mask = ~(series_mask | up_mask)

    if np.any(series_mask):
        out[series_mask] = _bessel_series(ell, x_arr[series_mask])
    if np.any(up_mask):
        out[up_mask] = _bessel_upward(ell, x_arr[up_mask])
    if np.any(down_mask):
        out[down_mask] = _bessel_downward(ell, x_arr[down_mask])
    return float(out[0]) if scalar else out


def spherical_bessel_j_derivs(ell: int, x):
    """j_ell, j_ell' and j_ell'' at x != 0, from the contiguous-order identities.

    The second derivative is assembled from j_{ell-2}, j_{ell-1}, j_ell, not
    from the Bessel differential equation, so it stays an independent check
    of the radial factors built on it.
    """
    x_arr = np.asarray(x, dtype=float)
    scalar = x_arr.ndim == 0
    x_arr = np.atleast_1d(x_arr)
    if np.any(x_arr == 0.0):
        raise CoordinateSingularityError("derivative identities require x != 0")

    j = np.atleast_1d(spherical_bessel_j(ell, x_arr))
    if ell == 0:
        j1 = np.atleast_1d(spherical_bessel_j(1, x_arr))
        d1 = -j1
        d2 = -(j - 2.0 / x_arr * j1)
    else:
        jm1 = np.atleast_1d(spherical_bessel_j(ell - 1, x_arr))
        d1 = jm1 - (ell + 1) / x_arr * j
        if ell == 1:
            d1m = -j  # j_0' = -j_1
        else:
            jm2 = np.atleast_1d(spherical_bessel_j(ell - 2, x_arr))
            d1m = jm2 - ell / x_arr * jm1
        d2 = d1m + (ell + 1) / x_arr**2 * j - (ell + 1) / x_arr * d1
    if scalar:
        return float(j[0]), float(d1[0]), float(d2[0])
    return j, d1, d2


def spherical_bessel_zero(ell: int, n: int) -> float:
    """n-th positive zero of j_ell (n = 1, 2, ...), via interlacing brackets."""
    if n < 1:
        raise ValueError(f"zero index must be >= 1, got {n}")
    # zeros of j_0 are k*pi; zeros of j_l interlace those of j_{l-1}
    count = n + ell
    brackets = np.pi * np.arange(1, count + 1)
    for l in range(1, ell + 1):
        refined = np.empty(count - l)
        for k in range(count - l):
            refined[k] = brentq(
                lambda z: spherical_bessel_j(l, z),
                brackets[k],
                brackets[k + 1],
                xtol=1e-14,
                rtol=4 * np.finfo(float).eps,
            )
        brackets = refined
    return float(brackets[n - 1])


def _legendre_table(ell: int, m: int, u: np.ndarray):
    """Rows P_m^m .. P_ell^m (positive convention) stacked along axis 0."""
    somx2 = np.sqrt(np.maximum(0.0, (1.0 - u) * (1.0 + u)))
    rows = np.empty((ell - m + 1,) + u.shape)
    pmm = np.ones_like(u)
    for i in range(1, m + 1):
        pmm = pmm * (2 * i - 1) * somx2
    rows[0] = pmm
    if ell > m:
        rows[1] = u * (2 * m + 1) * pmm
    for l in range(m + 2, ell + 1):
        rows[l - m] = ((2 * l - 1) * u * rows[l - m - 1] - (l + m - 1) * rows[l - m - 2]) / (l - m)
    return rows


def assoc_legendre(idx: AngularIndex, u):
    """Associated Legendre function P_ell^m(u) without the Condon-Shortley phase.

    Negative m uses the ratio identity P_ell^{-m} = (ell-m)!/(ell+m)! P_ell^m
    (no extra sign, consistent with the positive convention).
    """
    u_arr = np.asarray(u, dtype=float)
    if np.any(np.abs(u_arr) > 1.0 + 4 * np.finfo(float).eps):
        raise ValueError("assoc_legendre requires |u| <= 1")
    u_arr = np.clip(u_arr, -1.0, 1.0)
    scalar = u_arr.ndim == 0
    u_arr = np.atleast_1d(u_arr)
    m = abs(idx.m)
    table = _legendre_table(idx.ell, m, u_arr)
    p = table[-1]
    if idx.m < 0:
        p = p * math.factorial(idx.ell - m) / math.factorial(idx.ell + m)
    return float(p[0]) if scalar else p


def _legendre_with_derivs(ell: int, m: int, u: np.ndarray):
    """(P, dP/du, d2P/du2) for m >= 0, assembled from contiguous recurrences.

    Valid for |u| < 1 strictly (the derivative identities divide by 1-u^2).
    """
    one_m_u2 = (1.0 - u) * (1.0 + u)
    table = _legendre_table(ell, m, u)
    p = table[-1]
    p_lm1 = table[-2] if ell > m else np.zeros_like(u)
    p_lm2 = table[-3] if ell > m + 1 else np.zeros_like(u)

    dp = ((ell + m) * p_lm1 - ell * u * p) / one_m_u2
    if ell - 1 >= m:
        dp_lm1 = ((ell - 1 + m) * p_lm2 - (ell - 1) * u * p_lm1) / one_m_u2
    else:
        dp_lm1 = np.zeros_like(u)
    d2p = ((ell + m) * dp_lm1 - ell * p + (2 - ell) * u * dp) / one_m_u2
    return p, dp, d2p


def generalized_laguerre(n, a, x):
    """Generalized Laguerre polynomial L_n^a(x) by the three-term recurrence.

    ``n`` must be integer-valued and >= 0; anything else is rejected, since
    the non-polynomial continuation is outside this package's conventions.
    """
    n_f = float(n)
    if not n_f.is_integer() or n_f < 0:
        raise UnsupportedIndexError(
            f"Laguerre degree must be a nonnegative integer, got {n!r}"
        )
    n_i = int(n_f)
    x_arr = np.asarray(x, dtype=float)
    scalar = x_arr.ndim == 0
    x_arr = np.atleast_1d(x_arr)

    lkm1 = np.ones_like(x_arr)
    if n_i == 0:
        return float(lkm1[0]) if scalar else lkm1
    lk = (a + 1.0) - x_arr
    for k in range(1, n_i):
        lkm1, lk = lk, ((2 * k + 1 + a - x_arr) * lk - (k + a) * lkm1) / (k + 1)
    return float(lk[0]) if scalar else lk


def _harmonic_norm(ell: int, m: int) -> float:
    m = abs(m)
    return math.sqrt(
        (2 * ell + 1) / (4.0 * math.pi) * math.factorial(ell - m) / math.factorial(ell + m)
    )


def _theta_factor_with_derivs(idx: AngularIndex, theta: np.ndarray):
    """Normalized polar factor Theta(theta) and its first two theta-derivatives.

    Theta = eps * N_{lm} * P_l^{|m|}(cos theta); requires theta in (0, pi).
    """
    sin_t = np.sin(theta)
    if np.any(sin_t <= 1e-15):
        raise CoordinateSingularityError("polar derivatives require theta in (0, pi)")
    u = np.cos(theta)
    p, dp, d2p = _legendre_with_derivs(idx.ell, abs(idx.m), u)
    c = condon_shortley_sign(idx.m) * _harmonic_norm(idx.ell, idx.m)
    theta0 = c * p
    theta1 = -c * dp * sin_t
    theta2 = c * (d2p * sin_t**2 - dp * u)
    return theta0, theta1, theta2


def spherical_harmonic(idx: AngularIndex, theta, phi):
    """Angular factor eps * N_{lm} * P_l^{|m|}(cos theta) * exp(i m phi).

    eps = (-1)^m for m >= 0 and +1 for m < 0; N is the unit-norm constant,
    so the squared modulus integrates to 1 over the sphere.
    """
    theta_arr = np.asarray(theta, dtype=float)
    phi_arr = np.asarray(phi, dtype=float)
    if np.any(theta_arr < -4e-16) or np.any(theta_arr > np.pi + 4e-16):
        raise ValueError("spherical_harmonic requires theta in [0, pi]")
    scalar = theta_arr.ndim == 0 and phi_arr.ndim == 0
    u = np.cos(np.atleast_1d(theta_arr))
    p = _legendre_table(idx.ell, abs(idx.m), u)[-1]
    c = condon_shortley_sign(idx.m) * _harmonic_norm(idx.ell, idx.m)
    val = c * p * np.exp(1j * idx.m * np.atleast_1d(phi_arr))
    return complex(val[0]) if scalar else val
