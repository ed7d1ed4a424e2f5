"""
Spectral gap, accelerated-mixing constants and Chebyshev bound tests
"""

import math

import numpy as np
import pytest

from ogt_sim.exceptions import DomainError, InvalidGraphError, PreconditionError
from ogt_sim.graph.gossip import GossipMatrix, build_complete, build_metropolis_lazy, build_ring
from ogt_sim.graph.spectral import (
    jacobi_eigenvalues,
    lca_ratios,
    ring_spectral_gap,
    spectral_constants,
    spectral_gap,
    theta_residual,
    verify_lca,
)


class TestSpectralGap:
    @pytest.mark.parametrize("n", [3, 4, 7, 16, 50])
    def test_ring_matches_closed_form(self, n):
        expected = math.sin(math.pi / n) ** 2
        assert spectral_gap(build_ring(n)) == pytest.approx(expected, abs=1e-12)
        assert ring_spectral_gap(n) == pytest.approx(expected, abs=1e-12)

    def test_four_ring(self):
        assert spectral_gap(build_ring(4)) == pytest.approx(0.5, abs=1e-12)

    def test_complete_graph(self):
        assert spectral_gap(build_complete(5)) == pytest.approx(1.0)

    def test_jacobi_agrees_with_eigh(self):
        edges = [(i, (i + 1) % 9) for i in range(9)] + [(0, 3), (2, 7), (4, 8)]
        W = build_metropolis_lazy(9, edges)
        assert spectral_gap(W, method="jacobi") == pytest.approx(spectral_gap(W), abs=1e-10)

    def test_periodic_graph_rejected(self):
        W = GossipMatrix.from_weights([[0.0, 1.0], [1.0, 0.0]])
        with pytest.raises(InvalidGraphError):
            spectral_gap(W)

    def test_unknown_method(self):
        with pytest.raises(ValueError):
            spectral_gap(build_ring(3), method="power")


class TestJacobi:
    def test_random_symmetric(self):
        rng = np.random.default_rng(0)
        M = rng.standard_normal((6, 6))
        S = M + M.T
        assert np.allclose(jacobi_eigenvalues(S), np.linalg.eigvalsh(S), atol=1e-10)

    def test_diagonal_input(self):
        assert np.allclose(jacobi_eigenvalues(np.diag([3.0, 1.0, 2.0])), [1.0, 2.0, 3.0])


class TestSpectralConstants:
    @pytest.mark.parametrize("delta", [1e-4, 0.01, 0.25, 0.5, 0.9])
    def test_theta_is_root(self, delta):
        constants = spectral_constants(delta)
        assert abs(theta_residual(delta, constants.theta)) < 1e-12
        assert 0.0 <= constants.theta < 1.0
        assert constants.eta_w == pytest.approx((1.0 + constants.theta) / 2.0)
        assert constants.rho_w == pytest.approx(math.sqrt(constants.eta_w))
        assert constants.delta_tilde == pytest.approx(1.0 - constants.rho_w)

    def test_full_gap(self):
        constants = spectral_constants(1.0)
        assert constants.theta == 0.0
        assert constants.eta_w == 0.5

    def test_delta_tilde_scales_with_sqrt_delta(self):
        small = spectral_constants(1e-6).delta_tilde
        smaller = spectral_constants(1e-8).delta_tilde
        assert small / smaller == pytest.approx(10.0, rel=1e-2)

    @pytest.mark.parametrize("delta", [0.0, -0.1, 1.5])
    def test_out_of_domain(self, delta):
        with pytest.raises(DomainError):
            spectral_constants(delta)


class TestLca:
    def test_ratio_table_start(self):
        ratios = lca_ratios(np.array([0.0, 0.5]), 0.8, 3)
        assert ratios.shape == (4, 2)
        assert np.allclose(ratios[0], 1.0)
        assert np.allclose(ratios[1], 1.0 / 0.8)

    @pytest.mark.parametrize("delta", [0.02, 0.1, 0.5, 1.0])
    def test_bound_holds(self, delta):
        report = verify_lca(delta, k_max=500, grid=2001)
        assert report.passed
        assert report.bound == 7.0
        assert report.max_ratio >= 1.0

    @pytest.mark.parametrize("delta", [1e-4, 1e-3, 1e-2, 0.1, 0.5, 1.0])
    def test_bound_holds_full_resolution(self, delta):
        report = verify_lca(delta, k_max=2000, grid=10001)
        assert report.passed
        assert 1.0 <= report.max_ratio <= 7.0

    def test_eta_tilde_below_range(self):
        eta_w = spectral_constants(0.1).eta_w
        with pytest.raises(PreconditionError):
            verify_lca(0.1, eta_tilde=eta_w - 0.05)

    def test_eta_tilde_one_rejected(self):
        with pytest.raises(PreconditionError):
            verify_lca(0.1, eta_tilde=1.0)

    def test_grid_too_small(self):
        with pytest.raises(PreconditionError):
            verify_lca(0.1, grid=1)
