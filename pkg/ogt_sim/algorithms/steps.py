"""
One synchronous iteration of each method.
Step functions are value-to-value; only the stream and the counter mutate.
"""

import logging
from typing import Callable, Optional

import numpy as np

from ..exceptions import ConfigurationError, ShapeError
from ..graph.gossip import GossipMatrix
from ..graph.stacked import apply_augmented, ca_stack, top_block
from ..objective.suite import GradientCounter, ObjectiveSuite, grad_all
from ..rng import CoupledBernoulliStream
from .params import HyperParams
from .states import AccGtState, GtState, OgtState, SsgtState

logger = logging.getLogger(__name__)


def _lazy_gradient(suite: ObjectiveSuite, X: np.ndarray, counter: Optional[GradientCounter],
                   iteration: int) -> Callable[[], np.ndarray]:
    """∇F(X) evaluated on first request and reused afterwards."""
    cache = []

    def evaluate() -> np.ndarray:
        if not cache:
            cache.append(grad_all(suite, X, counter, iteration))
        return cache[0]

    return evaluate


def _check_agents(W: GossipMatrix, X: np.ndarray):
    if X.shape[0] != W.n:
        raise ShapeError("State rows do not match the gossip matrix", expected=W.n, actual=X.shape)


def step_gt(state: GtState, W: GossipMatrix, eta: float, suite: ObjectiveSuite,
            counter: Optional[GradientCounter] = None) -> GtState:
    """X⁺ = WX − ηS; S⁺ = WS + ∇F(X⁺) − ∇F(X)."""
    _check_agents(W, state.X)
    X_next = W.mix(state.X) - eta * state.S
    grad_next = grad_all(suite, X_next, counter, state.k)
    S_next = W.mix(state.S) + grad_next - state.grad
    return GtState(X=X_next, S=S_next, grad=grad_next, k=state.k + 1)


def step_accgt(state: AccGtState, W: GossipMatrix, alpha: float, beta: float, mu: float,
               suite: ObjectiveSuite, counter: Optional[GradientCounter] = None) -> AccGtState:
    """Accelerated gradient tracking with stepsize alpha and momentum beta.

    Z⁺ = (W(cX + Z) − (α/β)S) / (1 + c) with c = μα/β
    Y⁺ = βZ⁺ + (1 − β)WY
    X⁺ = βZ⁺ + (1 − β)Y⁺
    S⁺ = WS + ∇F(X⁺) − ∇F(X)
    """
    _check_agents(W, state.X)
    c = mu * alpha / beta
    Z_next = (W.mix(c * state.X + state.Z) - (alpha / beta) * state.S) / (1.0 + c)
    Y_next = beta * Z_next + (1.0 - beta) * W.mix(state.Y)
    X_next = beta * Z_next + (1.0 - beta) * Y_next
    grad_next = grad_all(suite, X_next, counter, state.k)
    S_next = W.mix(state.S) + grad_next - state.grad
    return AccGtState(X=X_next, Y=Y_next, Z=Z_next, S=S_next, grad=grad_next, k=state.k + 1)


def coupled_point(params: HyperParams, Y: np.ndarray, Z: np.ndarray, U: np.ndarray) -> np.ndarray:
    """X = (1 − α − τ)Y + αZ + τU."""
    return (1.0 - params.alpha - params.tau) * Y + params.alpha * Z + params.tau * U


def step_ssgt(state: SsgtState, W: GossipMatrix, params: HyperParams, stream: CoupledBernoulliStream,
              suite: ObjectiveSuite, counter: Optional[GradientCounter] = None) -> SsgtState:
    """One iteration of the implementation-friendly SS-GT scheme.

    ∇F(Xᵏ) is evaluated at most once, only when ξ = 1 or ζ ≠ 0.
    """
    _check_agents(W, state.X)
    xi, zeta = stream.next()
    X = state.X
    gradient = _lazy_gradient(suite, X, counter, state.k)

    mixing_input = state.Z + params.beta * X - params.eta * state.G
    if zeta != 0.0:
        mixing_input = mixing_input + params.eta * zeta * (state.M - gradient())
    Z_next = W.mix(mixing_input) / (1.0 + params.beta)
    Y_next = X + params.gamma * (Z_next - state.Z)

    if xi:
        M_next = gradient()
        U_next = W.mix(X)
        G_next = W.mix(state.G) + M_next - state.M
        Q_next = X
    else:
        M_next = state.M
        U_next = W.mix(state.U)
        G_next = W.mix(state.G)
        Q_next = state.Q

    X_next = coupled_point(params, Y_next, Z_next, U_next)
    return SsgtState(X=X_next, Y=Y_next, Z=Z_next, U=U_next, Q=Q_next, M=M_next, G=G_next,
                     k=state.k + 1, last_draw=(xi, zeta))


def step_ogt(state: OgtState, W: GossipMatrix, params: HyperParams, stream: CoupledBernoulliStream,
             suite: ObjectiveSuite, counter: Optional[GradientCounter] = None) -> OgtState:
    """One iteration of the implementation-friendly OGT scheme.

    Same branch structure as SS-GT with W replaced by the augmented operator
    on 2n-row stacks; each agent sends three length-d vectors per round.
    """
    if params.eta_w is None:
        raise ConfigurationError("OGT needs eta_w in its parameters")
    _check_agents(W, state.X)
    eta_w = params.eta_w
    xi, zeta = stream.next()
    X = state.X
    Z = top_block(state.Zt)
    gradient = _lazy_gradient(suite, X, counter, state.k)

    X_ca = ca_stack(X)
    mixing_input = state.Zt + params.beta * X_ca - params.eta * ca_stack(top_block(state.Gt))
    if zeta != 0.0:
        mixing_input = mixing_input + params.eta * zeta * ca_stack(state.M - gradient())
    Zt_next = apply_augmented(W, eta_w, mixing_input) / (1.0 + params.beta)
    Y_next = X + params.gamma * (top_block(Zt_next) - Z)

    if xi:
        M_next = gradient()
        Ut_next = apply_augmented(W, eta_w, X_ca)
        Gt_next = apply_augmented(W, eta_w, state.Gt) + ca_stack(M_next - state.M)
        Q_next = X
    else:
        M_next = state.M
        Ut_next = apply_augmented(W, eta_w, state.Ut)
        Gt_next = apply_augmented(W, eta_w, state.Gt)
        Q_next = state.Q

    X_next = coupled_point(params, Y_next, top_block(Zt_next), top_block(Ut_next))
    return OgtState(X=X_next, Y=Y_next, Q=Q_next, M=M_next, Zt=Zt_next, Ut=Ut_next, Gt=Gt_next,
                    k=state.k + 1, last_draw=(xi, zeta))
