"""
Stacked matrices and augmented gossip tests
"""

import numpy as np
import pytest

from ogt_sim.exceptions import ShapeError
from ogt_sim.graph.gossip import build_metropolis_lazy, build_ring
from ogt_sim.graph.spectral import spectral_constants, spectral_gap
from ogt_sim.graph.stacked import (
    apply_augmented,
    augmented_matrix,
    bottom_block,
    ca_stack,
    consensus_error,
    is_ca_type,
    project_consensus,
    project_stacked,
    stacked_consensus_error,
    stacked_decay,
    top_block,
)


@pytest.fixture
def rng():
    return np.random.default_rng(1)


class TestBlocks:
    def test_ca_stack(self, rng):
        A = rng.standard_normal((4, 3))
        S = ca_stack(A)
        assert S.shape == (8, 3)
        assert np.array_equal(top_block(S), A)
        assert np.array_equal(bottom_block(S), A)
        assert is_ca_type(S)

    def test_odd_rows(self):
        with pytest.raises(ShapeError):
            top_block(np.zeros((5, 2)))


class TestAugmented:
    def test_blockwise_matches_explicit(self, rng):
        W = build_ring(6)
        S = rng.standard_normal((12, 2))
        assert np.allclose(apply_augmented(W, 0.7, S), augmented_matrix(W, 0.7) @ S)

    def test_shape_error(self):
        with pytest.raises(ShapeError):
            apply_augmented(build_ring(4), 0.7, np.zeros((4, 2)))

    def test_preserves_consensus_on_ca_type(self, rng):
        W = build_ring(5)
        mean_row = rng.standard_normal((1, 3))
        S = ca_stack(np.repeat(mean_row, 5, axis=0))
        assert np.allclose(apply_augmented(W, 0.6, S), S)


class TestConsensus:
    def test_projection_removes_mean(self, rng):
        A = rng.standard_normal((7, 2))
        assert np.allclose(project_consensus(A).mean(axis=0), 0.0)

    def test_consensus_error(self):
        A = np.array([[1.0], [3.0]])
        assert consensus_error(A) == pytest.approx(2.0)
        assert stacked_consensus_error(ca_stack(A)) == pytest.approx(4.0)

    def test_stacked_projection_is_blockwise(self, rng):
        S = rng.standard_normal((10, 2))
        projected = project_stacked(S)
        np.testing.assert_allclose(top_block(projected), project_consensus(top_block(S)))
        np.testing.assert_allclose(bottom_block(projected), project_consensus(bottom_block(S)))
        np.testing.assert_allclose(project_stacked(projected), projected, atol=1e-14)


class TestStackedDecay:
    @pytest.mark.parametrize("n", [5, 6, 20])
    def test_ring_bound(self, n, rng):
        W = build_ring(n)
        eta_w = spectral_constants(spectral_gap(W)).eta_w
        report = stacked_decay(W, eta_w, rng.standard_normal((n, 3)), 500)
        assert report.passed
        assert report.bound == 14.0

    def test_ring_bound_random_inputs(self, rng):
        W = build_ring(8)
        eta_w = spectral_constants(spectral_gap(W)).eta_w
        reports = [stacked_decay(W, eta_w, rng.standard_normal((8, 3)), 500) for _ in range(20)]
        assert all(report.passed for report in reports)
        assert max(report.max_ratio for report in reports) < 14.0

    def test_long_horizon_stays_bounded(self, rng):
        W = build_ring(5)
        eta_w = spectral_constants(spectral_gap(W)).eta_w
        assert stacked_decay(W, eta_w, rng.standard_normal((5, 2)), 3000).passed

    def test_chorded_ring_bound(self, rng):
        edges = [(i, (i + 1) % 12) for i in range(12)] + [(0, 6), (3, 9)]
        W = build_metropolis_lazy(12, edges)
        eta_w = spectral_constants(spectral_gap(W)).eta_w
        assert stacked_decay(W, eta_w, rng.standard_normal((12, 2)), 300).passed

    def test_consensus_input(self):
        report = stacked_decay(build_ring(4), 0.6, np.ones((4, 2)), 10)
        assert report.max_ratio == 0.0
