"""Metric components, weights, and horizon / axis policies."""

import numpy as np
import pytest

from fishermodes.errors import CoordinateSingularityError, HorizonDomainError
from fishermodes.geometry import (
    CoordPoint,
    MetricSpec,
    gradient_weights,
    local_energy_sq,
    metric_diag,
    volume_weight,
)

MINK = MetricSpec.minkowski()
SCHW = MetricSpec.schwarzschild(1.0)


def test_minkowski_diag():
    g = metric_diag(MINK, CoordPoint(r=2.0, theta=np.pi / 2))
    np.testing.assert_allclose(g, (-1.0, 1.0, 4.0, 4.0))


def test_schwarzschild_diag():
    g = metric_diag(SCHW, CoordPoint(r=2.0, theta=np.pi / 2))
    np.testing.assert_allclose(g, (-0.5, 2.0, 4.0, 4.0))


def test_far_field_approaches_minkowski():
    g = metric_diag(SCHW, CoordPoint(r=1e6, theta=np.pi / 2))
    assert abs(g[0] - (-1.0)) <= 2e-6


def test_horizon_rejected():
    with pytest.raises(HorizonDomainError):
        metric_diag(SCHW, CoordPoint(r=1.0))
    with pytest.raises(HorizonDomainError):
        metric_diag(SCHW, CoordPoint(r=0.5))


def test_minkowski_requires_zero_rs():
    with pytest.raises(ValueError):
        MetricSpec(MetricSpec.minkowski().kind, r_s=1.0)


def test_volume_weight():
    assert volume_weight(MINK, CoordPoint(r=3.0, theta=np.pi / 2)) == pytest.approx(9.0)
    assert volume_weight(SCHW, CoordPoint(r=3.0, theta=np.pi / 2)) == pytest.approx(9.0)
    assert volume_weight(MINK, CoordPoint(r=3.0, theta=0.0)) == pytest.approx(0.0)


def test_volume_weight_rs_independent():
    rng = np.random.default_rng(7)
    r = rng.uniform(1.5, 50.0, 200)
    theta = rng.uniform(0.01, np.pi - 0.01, 200)
    p = CoordPoint(r=r, theta=theta)
    np.testing.assert_array_equal(volume_weight(MINK, p), volume_weight(SCHW, p))


def test_gradient_weights_minkowski():
    w = gradient_weights(MINK, CoordPoint(r=2.0, theta=np.pi / 2))
    np.testing.assert_allclose(w, (1.0, 1.0, 0.5, 0.5))


def test_gradient_weights_schwarzschild():
    w = gradient_weights(SCHW, CoordPoint(r=2.0, theta=np.pi / 2))
    np.testing.assert_allclose(w, (np.sqrt(2.0), 1.0 / np.sqrt(2.0), 0.5, 0.5))


def test_inverse_metric_identity_random_points():
    rng = np.random.default_rng(11)
    for spec in (MINK, SCHW):
        r = rng.uniform(1.2, 100.0, 1000)
        theta = rng.uniform(0.05, np.pi - 0.05, 1000)
        p = CoordPoint(r=r, theta=theta)
        w = gradient_weights(spec, p)
        g = metric_diag(spec, p)
        for wi, gi in zip(w, g):
            np.testing.assert_allclose(wi**2 * np.abs(gi), 1.0, rtol=1e-12)


def test_signature_single_negative():
    rng = np.random.default_rng(3)
    for spec in (MINK, SCHW):
        r = rng.uniform(1.1, 30.0, 500)
        theta = rng.uniform(0.05, np.pi - 0.05, 500)
        g = np.stack(metric_diag(spec, CoordPoint(r=r, theta=theta)))
        assert np.all(np.sum(g < 0, axis=0) == 1)


def test_polar_axis_rejected():
    with pytest.raises(CoordinateSingularityError):
        gradient_weights(MINK, CoordPoint(r=2.0, theta=0.0))
    with pytest.raises(CoordinateSingularityError):
        gradient_weights(MINK, CoordPoint(r=2.0, theta=np.pi))


def test_local_energy_sq():
    assert local_energy_sq(MINK, 5.0, 3.0) == pytest.approx(9.0)
    assert local_energy_sq(SCHW, 2.0, 2.0) == pytest.approx(2.0)
    rs = np.linspace(1.5, 40.0, 50)
    vals = local_energy_sq(SCHW, rs, 2.0)
    assert np.all(np.diff(vals) > 0)
