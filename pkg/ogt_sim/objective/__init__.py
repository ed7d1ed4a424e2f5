"""
Local objectives, counted gradient oracles and problem data.
"""

from .data import load_banknote, quadratic_minimizer, read_banknote_rows, synth_logistic, synth_quadratic
from .suite import (
    GradientCounter,
    ObjectiveKind,
    ObjectiveSuite,
    full_gradient,
    global_losses,
    grad_all,
    grad_at_common,
    local_losses,
    logistic_suite,
    loss,
    quadratic_suite,
    reference_minimizer,
    smoothness_constants,
)

__all__ = [
    'GradientCounter',
    'ObjectiveKind',
    'ObjectiveSuite',
    'full_gradient',
    'global_losses',
    'grad_all',
    'grad_at_common',
    'local_losses',
    'logistic_suite',
    'loss',
    'quadratic_suite',
    'reference_minimizer',
    'smoothness_constants',
    'load_banknote',
    'quadratic_minimizer',
    'read_banknote_rows',
    'synth_logistic',
    'synth_quadratic',
]
