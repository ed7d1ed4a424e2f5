"""
Runtime identity checks.
Every check recomputes gradients uncounted and returns a residual.
"""

import logging
from typing import Optional, Union

import numpy as np

from ..graph.stacked import bottom_block, consensus_error, top_block
from ..objective.suite import ObjectiveSuite, grad_all, loss
from .params import HyperParams
from .states import AccGtState, AlgoState, GtState, OgtState, SsgtState

logger = logging.getLogger(__name__)

TrackedState = Union[SsgtState, OgtState]


def _scaled(difference: np.ndarray, reference: np.ndarray) -> float:
    return float(np.max(np.abs(difference))) / (1.0 + float(np.max(np.abs(reference))))


def _mean(A: np.ndarray) -> np.ndarray:
    return A.mean(axis=0)


def _tracker(state: AlgoState) -> np.ndarray:
    if isinstance(state, (GtState, AccGtState)):
        return state.S
    return state.G


def tracking_residual(state: AlgoState, suite: ObjectiveSuite) -> float:
    """Average tracker against the mean gradient at its reference point.

    SS-GT/OGT track ∇F(Qᵏ); GT/Acc-GT track ∇F(Xᵏ). Scaled by 1 + ||mean||∞.
    """
    anchor = state.X if isinstance(state, (GtState, AccGtState)) else state.Q
    reference = _mean(grad_all(suite, anchor))
    return _scaled(_mean(_tracker(state)) - reference, reference)


def snapshot_average_residual(state: TrackedState) -> float:
    """||ū − q̄||∞ (U is the top block for OGT)."""
    return float(np.max(np.abs(_mean(state.U) - _mean(state.Q))))


def block_average_residual(state: OgtState) -> float:
    """Largest gap between the top- and bottom-block means of Zt, Ut, Gt."""
    return max(
        float(np.max(np.abs(_mean(top_block(S)) - _mean(bottom_block(S)))))
        for S in (state.Zt, state.Ut, state.Gt)
    )


def m_cache_residual(state: TrackedState, suite: ObjectiveSuite) -> float:
    """M against a fresh ∇F(Q)."""
    fresh = grad_all(suite, state.Q)
    return _scaled(state.M - fresh, fresh)


def block_shift_residual(prev_state: OgtState, next_state: OgtState, params: HyperParams,
                         suite: ObjectiveSuite) -> float:
    """Bottom block of Zt⁺ against the top block of the Z-step input over (1+β)."""
    xi, zeta = next_state.last_draw
    top_input = prev_state.Z + params.beta * prev_state.X - params.eta * prev_state.G
    if zeta != 0.0:
        top_input = top_input + params.eta * zeta * (prev_state.M - grad_all(suite, prev_state.X))
    expected = top_input / (1.0 + params.beta)
    return _scaled(bottom_block(next_state.Zt) - expected, expected)


def check_average_dynamics(prev_state: TrackedState, next_state: TrackedState, xi: int, zeta: float,
                           suite: ObjectiveSuite, params: HyperParams) -> float:
    """Replay the averaged recursion of one step and compare with next_state.

    x̄ = (1−α−τ)ȳ + αz̄ + τū
    z̄⁺ = (z̄ + βx̄ − ηḡ + ζη(ḡ − d̄)) / (1+β),  d̄ = mean ∇F(Xᵏ)
    ȳ⁺ = x̄ + γ(z̄⁺ − z̄)
    q̄⁺ = ū⁺ = ξx̄ + (1−ξ)ū
    ḡ⁺ = mean ∇F(Q⁺)

    Returns:
        float: Largest residual, each scaled by 1 + ||reference||∞
    """
    a, b, g, t, eta = params.alpha, params.beta, params.gamma, params.tau, params.eta
    y_bar = _mean(prev_state.Y)
    z_bar = _mean(prev_state.Z)
    u_bar = _mean(prev_state.U)
    g_bar = _mean(prev_state.G)
    d_bar = _mean(grad_all(suite, prev_state.X))

    x_bar = (1.0 - a - t) * y_bar + a * z_bar + t * u_bar
    z_next = (z_bar + b * x_bar - eta * g_bar + zeta * eta * (g_bar - d_bar)) / (1.0 + b)
    y_next = x_bar + g * (z_next - z_bar)
    u_next = xi * x_bar + (1 - xi) * u_bar
    g_next = _mean(grad_all(suite, next_state.Q))

    residuals = [
        _scaled(_mean(prev_state.X) - x_bar, x_bar),
        _scaled(_mean(next_state.Z) - z_next, z_next),
        _scaled(_mean(next_state.Y) - y_next, y_next),
        _scaled(_mean(next_state.U) - u_next, u_next),
        _scaled(_mean(next_state.Q) - u_next, u_next),
        _scaled(_mean(next_state.G) - g_next, g_next),
    ]
    return max(residuals)


def descent_inequality_slack(state: AlgoState, suite: ObjectiveSuite, x_star: np.ndarray,
                             f_star: Optional[float] = None) -> float:
    """Slack of the inexact-gradient descent inequality at a = x̄ᵏ, b = x*.

    f(x̄) <= f(x*) + ⟨d̄, x̄ − x*⟩ − (μ/4)||x̄ − x*||² + (L/n)||ΠX||²

    Returns:
        float: Right side minus left side, divided by 1 + |f(x̄)|
    """
    x_bar = _mean(state.X)
    d_bar = _mean(grad_all(suite, state.X))
    if f_star is None:
        f_star = loss(suite, x_star)
    f_bar = loss(suite, x_bar)
    gap = x_bar - x_star
    rhs = (f_star + float(d_bar @ gap) - suite.mu / 4.0 * float(gap @ gap)
           + suite.L / suite.n * consensus_error(state.X))
    return (rhs - f_bar) / (1.0 + abs(f_bar))
