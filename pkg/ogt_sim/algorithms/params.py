"""
Hyperparameters.
Theorem-driven prescriptions, hand-tuned presets and hypothesis checks.
"""

import logging
import math
from dataclasses import asdict, dataclass, replace
from enum import Enum
from typing import Any, Dict, List, Optional

from ..exceptions import ConfigurationError

logger = logging.getLogger(__name__)


class Algorithm(str, Enum):
    GT = "gt"
    ACCGT = "accgt"
    SSGT = "ssgt"
    OGT = "ogt"


class GraphPreset(str, Enum):
    CYCLE = "cycle"
    DENSER = "denser"


# vectors of length d each agent sends per communication round
VECTORS_PER_ROUND = {
    Algorithm.GT: 2,
    Algorithm.ACCGT: 3,
    Algorithm.SSGT: 3,
    Algorithm.OGT: 3,
}

# η_w values reported for the 200-agent networks; runs use the value of the actual graph
FIG1_ETA_W = {GraphPreset.CYCLE: 0.978, GraphPreset.DENSER: 0.883}
FIG1_ACCGT_ALPHA = {GraphPreset.CYCLE: 0.0001, GraphPreset.DENSER: 0.0004}
FIG1_MU = 0.01

# scaled rule: η = gap/(8Lγ), a gap-sized fraction of the first hypothesis' limit 1/(4Lγ)
SCALED_STEP_DIVISOR = 8.0


@dataclass(frozen=True)
class HyperParams:
    """SS-GT / OGT parameters

    Attributes:
        alpha, gamma, tau: Coupling weights in (0, 1) with alpha + tau < 1
        beta: Z-step averaging weight (>= 0)
        eta: Stepsize
        p, q: Snapshot and correction probabilities
        eta_w: Augmented-mixing momentum (OGT only)
    """
    alpha: float
    beta: float
    gamma: float
    tau: float
    eta: float
    p: float
    q: float
    eta_w: Optional[float] = None

    def __post_init__(self):
        for name in ("alpha", "gamma", "tau"):
            value = getattr(self, name)
            if not (0.0 < value < 1.0):
                raise ConfigurationError(f"{name} must lie in (0, 1), got {value}")
        if self.alpha + self.tau >= 1.0:
            raise ConfigurationError(f"alpha + tau must be < 1, got {self.alpha + self.tau}")
        if self.eta <= 0:
            raise ConfigurationError(f"eta must be positive, got {self.eta}")
        if self.beta < 0:
            raise ConfigurationError(f"beta must be non-negative, got {self.beta}")
        for name in ("p", "q"):
            value = getattr(self, name)
            if not (0.0 < value <= 1.0):
                raise ConfigurationError(f"{name} must lie in (0, 1], got {value}")
        if self.eta_w is not None and not (0.0 < self.eta_w < 1.0):
            raise ConfigurationError(f"eta_w must lie in (0, 1), got {self.eta_w}")

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass(frozen=True)
class GtParams:
    eta: float

    def __post_init__(self):
        if self.eta <= 0:
            raise ConfigurationError(f"eta must be positive, got {self.eta}")

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass(frozen=True)
class AccGtParams:
    """Acc-GT stepsize alpha and momentum beta in (0, 1]."""
    alpha: float
    beta: float

    def __post_init__(self):
        if self.alpha <= 0:
            raise ConfigurationError(f"alpha must be positive, got {self.alpha}")
        if not (0.0 < self.beta <= 1.0):
            raise ConfigurationError(f"beta must lie in (0, 1], got {self.beta}")

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def coupling_gamma(alpha: float, tau: float) -> float:
    """γ = 4α / (4 − 4τ − 3α)."""
    return 4.0 * alpha / (4.0 - 4.0 * tau - 3.0 * alpha)


def derive_ssgt_params(kappa: float, delta: float, L: float, mu: float) -> HyperParams:
    """SS-GT parameters with the linear-rate guarantee.

    Args:
        kappa: Condition number L/μ
        delta: Spectral gap of W
        L: Smoothness constant
        mu: Strong-convexity constant

    Returns:
        HyperParams: τ=1/2, α=1/(23√κ), p=q=δ/4232, η=δ√κ/(12167L), β=μη/2
    """
    _check_problem(kappa, delta)
    tau = 0.5
    alpha = 1.0 / (23.0 * math.sqrt(kappa))
    eta = delta * math.sqrt(kappa) / (12167.0 * L)
    p = delta / 4232.0
    return HyperParams(alpha=alpha, beta=mu * eta / 2.0, gamma=coupling_gamma(alpha, tau), tau=tau,
                       eta=eta, p=p, q=p)


def derive_ogt_params(kappa: float, delta_tilde: float, L: float, mu: float) -> HyperParams:
    """OGT parameters with the accelerated linear-rate guarantee.

    τ=1/2, α=1/(45√κ), p=q=δ̃/60750, η=δ̃√κ/(91125L), β=μη/2 and
    η_w = (1 − δ̃)², the inverse of δ̃ = 1 − √η_w.
    """
    if not (0.0 < delta_tilde < 1.0):
        raise ConfigurationError(f"delta_tilde must lie in (0, 1), got {delta_tilde}")
    _check_problem(kappa, 1.0)
    tau = 0.5
    alpha = 1.0 / (45.0 * math.sqrt(kappa))
    eta = delta_tilde * math.sqrt(kappa) / (91125.0 * L)
    p = delta_tilde / 60750.0
    return HyperParams(alpha=alpha, beta=mu * eta / 2.0, gamma=coupling_gamma(alpha, tau), tau=tau,
                       eta=eta, p=p, q=p, eta_w=(1.0 - delta_tilde) ** 2)


def scaled_ssgt_params(kappa: float, delta: float, L: float, mu: float) -> HyperParams:
    """SS-GT with the theorem's τ and α at a practical stepsize.

    η = δ/(8Lγ), so Lγ = δ/(8η) <= 1/(4η); β = μη/2 meets the second hypothesis
    with equality and p = q = δ. check_parameter_conditions reports nothing.
    """
    _check_problem(kappa, delta)
    return _scaled_params(1.0 / (23.0 * math.sqrt(kappa)), delta, L, mu)


def scaled_ogt_params(kappa: float, delta_tilde: float, L: float, mu: float) -> HyperParams:
    """OGT counterpart of scaled_ssgt_params with α = 1/(45√κ) and δ̃ in place of δ."""
    if not (0.0 < delta_tilde < 1.0):
        raise ConfigurationError(f"delta_tilde must lie in (0, 1), got {delta_tilde}")
    _check_problem(kappa, 1.0)
    params = _scaled_params(1.0 / (45.0 * math.sqrt(kappa)), delta_tilde, L, mu)
    return replace(params, eta_w=(1.0 - delta_tilde) ** 2)


def _scaled_params(alpha: float, gap: float, L: float, mu: float) -> HyperParams:
    tau = 0.5
    gamma = coupling_gamma(alpha, tau)
    eta = gap / (SCALED_STEP_DIVISOR * L * gamma)
    return HyperParams(alpha=alpha, beta=mu * eta / 2.0, gamma=gamma, tau=tau, eta=eta, p=gap, q=gap)


def derive_gt_params(delta: float, L: float) -> GtParams:
    """Conservative GT baseline stepsize η = δ/(4L)."""
    if not (0.0 < delta <= 1.0) or L <= 0:
        raise ConfigurationError(f"Need delta in (0, 1] and L > 0, got delta={delta}, L={L}")
    return GtParams(eta=delta / (4.0 * L))


def preset_fig1(graph_id: GraphPreset, mu: float = FIG1_MU, eta_w: Optional[float] = None) -> HyperParams:
    """Hand-tuned OGT parameters for the cycle and the chorded network.

    Args:
        graph_id: "cycle" or "denser"
        mu: Strong-convexity constant (β = ημ/2)
        eta_w: Momentum of the actual graph; defaults to the reported 0.978 / 0.883
    """
    graph_id = GraphPreset(graph_id)
    alpha, tau = 0.02, 0.1
    if graph_id is GraphPreset.CYCLE:
        eta, p = 0.05, 0.1
    else:
        eta, p = 0.1, 0.2
    return HyperParams(alpha=alpha, beta=eta * mu / 2.0, gamma=coupling_gamma(alpha, tau), tau=tau,
                       eta=eta, p=p, q=p, eta_w=FIG1_ETA_W[graph_id] if eta_w is None else eta_w)


def preset_fig1_accgt(graph_id: GraphPreset, mu: float = FIG1_MU) -> AccGtParams:
    """Acc-GT with hand-tuned α and β = √(μα)/2."""
    alpha = FIG1_ACCGT_ALPHA[GraphPreset(graph_id)]
    return AccGtParams(alpha=alpha, beta=math.sqrt(mu * alpha) / 2.0)


def check_parameter_conditions(params: HyperParams, L: float, mu: float) -> List[str]:
    """List the violated hypotheses of the linear-rate theorems.

    Returns:
        List[str]: Human-readable violated conditions (empty when all hold)
    """
    a, b, g, t, eta = params.alpha, params.beta, params.gamma, params.tau, params.eta
    tol = 1e-12
    violations = []
    if L * g > 1.0 / (4.0 * eta) + tol:
        violations.append(f"L*gamma <= 1/(4*eta) fails: {L * g:.6g} > {1.0 / (4.0 * eta):.6g}")
    if b / (2.0 * eta) > mu / 4.0 + tol:
        violations.append(f"beta/(2*eta) <= mu/4 fails: {b / (2.0 * eta):.6g} > {mu / 4.0:.6g}")
    lhs = 1.0 / g - (1.0 - a - t) / a - 0.5
    if lhs > tol:
        violations.append(f"1/gamma - (1-alpha-tau)/alpha - 1/2 <= 0 fails: {lhs:.6g}")
    if (1.0 - a - t) / a > 1.0 / g - 0.25 + tol:
        violations.append(f"(1-alpha-tau)/alpha <= 1/gamma - 1/4 fails: "
                          f"{(1.0 - a - t) / a:.6g} > {1.0 / g - 0.25:.6g}")
    for violation in violations:
        logger.warning(f"Parameter condition violated: {violation}")
    return violations


def theorem_iteration_budget(algorithm: Algorithm, kappa: float, delta: float,
                             delta_tilde: Optional[float] = None) -> int:
    """Iteration budget 100√κ/δ (SS-GT) or 100√κ/δ̃ (OGT)."""
    algorithm = Algorithm(algorithm)
    if algorithm is Algorithm.SSGT:
        return int(math.ceil(100.0 * math.sqrt(kappa) / delta))
    if algorithm is Algorithm.OGT:
        if delta_tilde is None:
            raise ConfigurationError("OGT budget needs delta_tilde")
        return int(math.ceil(100.0 * math.sqrt(kappa) / delta_tilde))
    raise ConfigurationError(f"No theorem budget for {algorithm.value}")


def _check_problem(kappa: float, delta: float):
    if kappa < 1:
        raise ConfigurationError(f"kappa must be >= 1, got {kappa}")
    if not (0.0 < delta <= 1.0):
        raise ConfigurationError(f"delta must lie in (0, 1], got {delta}")
