"""Fisher-matrix quadratures, constraint closures, statistical distance."""

import dataclasses

import numpy as np
import pytest

from fishermodes.errors import NormalizationError
from fishermodes.fisher import constraint_check, fisher_matrix, statistical_distance
from fishermodes.geometry import CoordPoint, MetricSpec
from fishermodes.modes import (
    LocalizationConstraint,
    ModeSpec,
    make_free_mode,
    make_localized_mode,
)
from fishermodes.quadrature import Domain, grid_nodes

MINK = MetricSpec.minkowski()
BOX = Domain(0.0, 1.0, 64, 24, 16)

SWEEP = [
    make_free_mode(ModeSpec.free(0.0, 0, 0, 1), BOX),
    make_free_mode(ModeSpec.free(0.0, 2, 2, 2), BOX),
    make_free_mode(ModeSpec.free(1.0, 3, 0, 1), BOX),
    make_free_mode(ModeSpec.free(2.0, 1, 0, 2), BOX),
    make_localized_mode(ModeSpec.localized(0.0, 0, 0, 1.0, 0), LocalizationConstraint(1.0)),
    make_localized_mode(ModeSpec.localized(1.0, 2, 0, 2.0, 1), LocalizationConstraint(0.8)),
    make_localized_mode(ModeSpec.localized(0.0, 3, 2, 1.0, 2), LocalizationConstraint(1.0)),
]


class TestFisherMatrix:
    def test_s_mode_phi_entry_vanishes(self):
        rep = fisher_matrix(SWEEP[0])
        assert abs(rep.entries[3, 3]) <= 1e-10
        assert rep.expected[3, 3] == 0.0

    @pytest.mark.parametrize("mode", SWEEP, ids=lambda m: f"{m.spec.family}-{m.spec.idx.ell}")
    def test_diagonal_residuals(self, mode):
        rep = fisher_matrix(mode)
        assert rep.passed
        assert np.max(np.abs(np.diag(rep.residuals))) <= 1e-6

    @pytest.mark.parametrize("mode", SWEEP, ids=lambda m: f"{m.spec.family}-{m.spec.idx.ell}")
    def test_offdiagonal_real_parts(self, mode):
        rep = fisher_matrix(mode)
        off = ~np.eye(4, dtype=bool)
        scale = np.max(np.abs(rep.expected))
        assert np.max(np.abs(rep.entries[off])) <= 1e-8 * scale

    def test_entries_symmetric_exactly(self):
        rep = fisher_matrix(SWEEP[1])
        np.testing.assert_array_equal(rep.entries, rep.entries.T)

    def test_symmetry_computed_both_ways(self):
        # recompute three off-diagonal pairs in both conjugation orders
        mode = SWEEP[1]
        (r, theta, phi), w = grid_nodes(BOX)
        shape = (BOX.n_r, BOX.n_theta, BOX.n_phi)
        wgt = np.broadcast_to(r**2 * w, shape)
        p = CoordPoint(tau=0.0, r=r, theta=theta, phi=phi)
        parts = {c: np.broadcast_to(mode.partials(c, p), shape)
                 for c in ("r", "theta", "phi")}
        for ci, cj in [("r", "theta"), ("r", "phi"), ("theta", "phi")]:
            ij = np.sum(np.conj(parts[ci]) * parts[cj] * wgt).real
            ji = np.sum(np.conj(parts[cj]) * parts[ci] * wgt).real
            assert abs(ij - ji) <= 1e-12 * max(1.0, abs(ij))

    def test_diag_imag_parts_zero(self):
        rep = fisher_matrix(SWEEP[2])
        assert np.max(np.abs(np.diag(rep.imag_parts))) == 0.0

    def test_master_relation(self):
        # diag(entries) / diag(<kappa^2 |g|> expectations) = 1 within 1e-6
        for mode in SWEEP:
            rep = fisher_matrix(mode)
            for i in range(4):
                if abs(rep.expected[i, i]) > 1e-12:
                    assert rep.entries[i, i] / rep.expected[i, i] == pytest.approx(
                        1.0, abs=1e-6
                    )

    def test_rotating_mode_reports_violation(self):
        # eta != 0 and m != 0: the tau-phi cross term is -eta*m and must fail
        mode = make_free_mode(ModeSpec.free(1.0, 2, 2, 1), BOX)
        rep = fisher_matrix(mode)
        assert rep.entries[0, 3] == pytest.approx(-2.0, rel=1e-10)
        assert not rep.passed

    def test_denormalized_rejected(self):
        mode = SWEEP[0]
        bad = dataclasses.replace(mode, evaluator=lambda p: 2.0 * mode.evaluator(p))
        with pytest.raises(NormalizationError):
            fisher_matrix(bad)

    def test_json_dict_shape(self):
        d = fisher_matrix(SWEEP[0]).to_json_dict()
        assert set(d) == {"mode", "domain", "entries", "expected", "residuals",
                          "imag_parts", "pass"}
        assert len(d["entries"]) == 4 and len(d["entries"][0]) == 4


class TestConstraintCheck:
    @pytest.mark.parametrize("mode", SWEEP, ids=lambda m: f"{m.spec.family}-{m.spec.idx.ell}")
    def test_all_four_constraints(self, mode):
        for res in constraint_check(mode):
            assert res.passed, res

    def test_theta_constraint_ell2(self):
        mode = make_free_mode(ModeSpec.free(0.0, 2, 2, 1), BOX)
        res = {c.coord: c for c in constraint_check(mode)}
        assert abs(res["theta"].residual) <= 1e-6

    def test_localized_radial_field(self):
        mode = make_localized_mode(
            ModeSpec.localized(0.0, 0, 0, 1.0, 0), LocalizationConstraint(1.0)
        )
        res = {c.coord: c for c in constraint_check(mode)}
        assert abs(res["r"].residual) <= 1e-6

    def test_tau_constraint_analytic_zero(self):
        mode = make_free_mode(ModeSpec.free(2.0, 0, 0, 1), BOX)
        res = {c.coord: c for c in constraint_check(mode)}
        assert res["tau"].residual == 0.0

    def test_denormalized_rejected(self):
        mode = SWEEP[0]
        bad = dataclasses.replace(mode, evaluator=lambda p: 2.0 * mode.evaluator(p))
        with pytest.raises(NormalizationError):
            constraint_check(bad)


class TestStatisticalDistance:
    def test_identity_exact(self):
        rho = [0.25, 0.5, 0.25]
        assert statistical_distance(rho, rho) == 0.0

    def test_two_cell_frozen_oracle(self):
        # 2*acos(sqrt(0.45) + sqrt(0.05)) at 50 decimal digits
        oracle = 0.92729521800161223243
        assert statistical_distance([0.5, 0.5], [0.9, 0.1]) == pytest.approx(
            oracle, rel=1e-14
        )

    def test_symmetry_of_formula(self):
        a = [0.3, 0.2, 0.5]
        b = [0.6, 0.1, 0.3]
        assert statistical_distance(a, b) == statistical_distance(b, a)

    def test_orthogonal_support_limit(self):
        eps = 1e-9
        d = statistical_distance([1 - eps, eps], [eps, 1 - eps])
        assert abs(d - np.pi) <= 2e-4
        assert d < np.pi

    def test_metric_properties_random_triples(self):
        rng = np.random.default_rng(2024)
        for _ in range(100):
            rho = rng.uniform(0.05, 1.0, (3, 8))
            rho /= rho.sum(axis=1, keepdims=True)
            a, b, c = rho
            d_ab = statistical_distance(a, b)
            d_ba = statistical_distance(b, a)
            d_bc = statistical_distance(b, c)
            d_ac = statistical_distance(a, c)
            assert d_ab == d_ba
            assert d_ab >= 0.0
            assert d_ac <= d_ab + d_bc + 1e-12

    def test_zero_cell_rejected(self):
        with pytest.raises(ValueError):
            statistical_distance([1.0, 0.0], [0.5, 0.5])

    def test_shape_mismatch_rejected(self):
        with pytest.raises(ValueError):
            statistical_distance([0.5, 0.5], [0.3, 0.3, 0.4])

    def test_unnormalized_rejected(self):
        with pytest.raises(ValueError):
            statistical_distance([0.5, 0.6], [0.5, 0.5])
