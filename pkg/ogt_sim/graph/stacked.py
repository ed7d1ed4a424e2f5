"""
Stacked 2n-row matrices and the augmented gossip operator.
"""

import logging

import numpy as np

from ..exceptions import ShapeError
from .gossip import GossipMatrix
from .spectral import BoundReport

logger = logging.getLogger(__name__)

STACKED_DECAY_BOUND = 14.0


def ca_stack(A: np.ndarray) -> np.ndarray:
    """Duplicate an n×d block into a 2n×d ca-type stack."""
    A = np.asarray(A, dtype=np.float64)
    return np.vstack([A, A])


def top_block(S: np.ndarray) -> np.ndarray:
    """Current block (first n rows) of a stacked matrix."""
    half = _half_rows(S)
    return S[:half]


def bottom_block(S: np.ndarray) -> np.ndarray:
    """Lagged block (last n rows) of a stacked matrix."""
    half = _half_rows(S)
    return S[half:]


def is_ca_type(S: np.ndarray) -> bool:
    return bool(np.array_equal(top_block(S), bottom_block(S)))


def _half_rows(S: np.ndarray) -> int:
    rows = S.shape[0]
    if rows % 2:
        raise ShapeError("Stacked matrix needs an even row count", actual=S.shape)
    return rows // 2


def apply_augmented(W: GossipMatrix, eta_w: float, A: np.ndarray) -> np.ndarray:
    """Multiply a stacked matrix by W̃ = [(1+η_w)W, −η_w I; I, 0] blockwise.

    Args:
        W: Gossip matrix (n×n)
        eta_w: Momentum weight η_w
        A: 2n×d stacked matrix

    Returns:
        np.ndarray: 2n×d stacked product

    Raises:
        ShapeError: If A does not have 2n rows
    """
    if A.ndim != 2 or A.shape[0] != 2 * W.n:
        raise ShapeError("Augmented mixing input must have 2n rows", expected=2 * W.n, actual=A.shape)
    top = A[:W.n]
    bottom = A[W.n:]
    return np.vstack([(1.0 + eta_w) * (W.weights @ top) - eta_w * bottom, top])


def augmented_matrix(W: GossipMatrix, eta_w: float) -> np.ndarray:
    """Explicit 2n×2n operator W̃ (test oracle; steps use apply_augmented)."""
    n = W.n
    return np.block([
        [(1.0 + eta_w) * W.weights, -eta_w * np.eye(n)],
        [np.eye(n), np.zeros((n, n))],
    ])


def project_consensus(A: np.ndarray) -> np.ndarray:
    """Π A = (I − 11ᵀ/n) A, the deviation from the row mean."""
    return A - A.mean(axis=0, keepdims=True)


def consensus_error(A: np.ndarray) -> float:
    """Σ_i ||a_i − ā||², the squared Frobenius norm of Π A."""
    deviation = project_consensus(np.asarray(A, dtype=np.float64))
    return float(np.sum(deviation * deviation))


def stacked_consensus_error(S: np.ndarray) -> float:
    """Consensus error of each block summed (Π̃ is blockwise Π)."""
    return consensus_error(top_block(S)) + consensus_error(bottom_block(S))


def project_stacked(S: np.ndarray) -> np.ndarray:
    """Π̃ S, the blockwise consensus projection of a 2n-row stack."""
    return np.vstack([project_consensus(top_block(S)), project_consensus(bottom_block(S))])


def stacked_decay(W: GossipMatrix, eta_w: float, A: np.ndarray, k_max: int) -> BoundReport:
    """Measure max_k ||Π̃ W̃ᵏ Π̃ A_ca||² / (ρ_w^{2k} ||Π A||²) for k <= k_max.

    The iterate is rescaled by 1/ρ_w per application so that the ratio is
    formed without underflow. Π̃ commutes with W̃, and the stack is re-projected
    after every application: round-off in the consensus direction grows like
    ρ_w^{-k} once rescaled.

    Returns:
        BoundReport: Maximum ratio against the constant 14
    """
    base = consensus_error(A)
    if base == 0.0:
        return BoundReport(max_ratio=0.0, bound=STACKED_DECAY_BOUND, worst_k=0)

    rho_w = float(np.sqrt(eta_w))
    scaled = ca_stack(project_consensus(np.asarray(A, dtype=np.float64)))
    max_ratio = stacked_consensus_error(scaled) / base
    worst_k = 0
    for k in range(1, k_max + 1):
        scaled = project_stacked(apply_augmented(W, eta_w, scaled)) / rho_w
        ratio = stacked_consensus_error(scaled) / base
        if ratio > max_ratio:
            max_ratio, worst_k = ratio, k
    logger.debug(f"Stacked decay over {k_max} steps: max ratio {max_ratio:.4f} at k={worst_k}")
    return BoundReport(max_ratio=max_ratio, bound=STACKED_DECAY_BOUND, worst_k=worst_k)
