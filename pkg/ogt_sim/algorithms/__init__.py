"""
Decentralized methods: GT, Acc-GT, SS-GT and OGT.
"""

from .diagnostics import (
    block_average_residual,
    block_shift_residual,
    check_average_dynamics,
    descent_inequality_slack,
    m_cache_residual,
    snapshot_average_residual,
    tracking_residual,
)
from .params import (
    VECTORS_PER_ROUND,
    AccGtParams,
    Algorithm,
    GraphPreset,
    GtParams,
    HyperParams,
    check_parameter_conditions,
    coupling_gamma,
    derive_gt_params,
    derive_ogt_params,
    derive_ssgt_params,
    preset_fig1,
    preset_fig1_accgt,
    scaled_ogt_params,
    scaled_ssgt_params,
    theorem_iteration_budget,
)
from .states import (
    AccGtState,
    AlgoState,
    GtState,
    OgtState,
    SsgtState,
    init_accgt,
    init_gt,
    init_ogt,
    init_ssgt,
    load_state,
    save_state,
    state_matrices,
)
from .steps import coupled_point, step_accgt, step_gt, step_ogt, step_ssgt

__all__ = [
    'block_average_residual',
    'block_shift_residual',
    'check_average_dynamics',
    'descent_inequality_slack',
    'm_cache_residual',
    'snapshot_average_residual',
    'tracking_residual',
    'VECTORS_PER_ROUND',
    'AccGtParams',
    'Algorithm',
    'GraphPreset',
    'GtParams',
    'HyperParams',
    'check_parameter_conditions',
    'coupling_gamma',
    'derive_gt_params',
    'derive_ogt_params',
    'derive_ssgt_params',
    'preset_fig1',
    'preset_fig1_accgt',
    'scaled_ogt_params',
    'scaled_ssgt_params',
    'theorem_iteration_budget',
    'AccGtState',
    'AlgoState',
    'GtState',
    'OgtState',
    'SsgtState',
    'init_accgt',
    'init_gt',
    'init_ogt',
    'init_ssgt',
    'load_state',
    'save_state',
    'state_matrices',
    'coupled_point',
    'step_accgt',
    'step_gt',
    'step_ogt',
    'step_ssgt',
]
