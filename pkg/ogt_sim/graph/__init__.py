"""
Gossip graphs: mixing matrices, spectral constants and the augmented operator.
"""

from .gossip import (
    GossipMatrix,
    build_complete,
    build_metropolis_lazy,
    build_ring,
    is_connected,
    make_psd,
    normalize_edges,
)
from .spectral import (
    BoundReport,
    SpectralConstants,
    jacobi_eigenvalues,
    lca_ratios,
    ring_spectral_gap,
    spectral_constants,
    spectral_gap,
    theta_residual,
    verify_lca,
)
from .stacked import (
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

__all__ = [
    'GossipMatrix',
    'build_complete',
    'build_metropolis_lazy',
    'build_ring',
    'is_connected',
    'make_psd',
    'normalize_edges',
    'BoundReport',
    'SpectralConstants',
    'jacobi_eigenvalues',
    'lca_ratios',
    'ring_spectral_gap',
    'spectral_constants',
    'spectral_gap',
    'theta_residual',
    'verify_lca',
    'apply_augmented',
    'augmented_matrix',
    'bottom_block',
    'ca_stack',
    'consensus_error',
    'is_ca_type',
    'project_consensus',
    'project_stacked',
    'stacked_consensus_error',
    'stacked_decay',
    'top_block',
]
