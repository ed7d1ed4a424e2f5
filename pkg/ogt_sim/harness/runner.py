"""
Experiment runner.
Builds graph, objective and parameters from a RunConfig, iterates the chosen
method to its stopping rule and records metrics and diagnostics.
"""

import logging
from dataclasses import dataclass, field, replace
from typing import Any, Dict, List, Optional, Union

import numpy as np

from ..algorithms import diagnostics
from ..algorithms.params import (
    VECTORS_PER_ROUND,
    AccGtParams,
    Algorithm,
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
)
from ..algorithms.states import AlgoState, init_accgt, init_gt, init_ogt, init_ssgt, state_matrices
from ..algorithms.steps import step_accgt, step_gt, step_ogt, step_ssgt
from ..config.settings import SimulatorSettings, get_default_settings
from ..exceptions import ConfigurationError, DiagnosticError, DivergenceError
from ..graph.gossip import GossipMatrix, build_metropolis_lazy, build_ring, make_psd
from ..graph.spectral import SpectralConstants, spectral_constants, spectral_gap
from ..graph.stacked import consensus_error
from ..objective.data import load_banknote, synth_logistic, synth_quadratic
from ..objective.suite import GradientCounter, ObjectiveSuite, full_gradient, global_losses, loss, reference_minimizer
from ..rng import expected_gradient_fraction, restart
from ..utils.storage import read_gossip_matrix
from .config import ExplicitParams, GraphSpec, ObjectiveSpec, RunConfig

logger = logging.getLogger(__name__)

Params = Union[GtParams, AccGtParams, HyperParams]

TARGET_REACHED = "target_reached"
MAX_ITERS = "max_iters"


@dataclass(frozen=True)
class IterationRecord:
    """Metrics after k communication rounds."""
    k: int
    vectors_sent: int
    grad_evals: int
    loss_gap: float
    consensus_X: float
    consensus_Q: float
    tracking_residual: Optional[float] = None


@dataclass
class RunResult:
    config: Dict[str, Any]
    records: List[IterationRecord]
    termination: str
    x_star_residual: float
    metadata: Dict[str, Any] = field(default_factory=dict)
    final_state: Optional[AlgoState] = field(default=None, repr=False)

    @property
    def final_record(self) -> IterationRecord:
        return self.records[-1]

    def iterations_to(self, gap: float) -> Optional[int]:
        """First recorded k with loss_gap <= gap."""
        for record in self.records:
            if record.loss_gap <= gap:
                return record.k
        return None

    def grad_evals_to(self, gap: float) -> Optional[int]:
        for record in self.records:
            if record.loss_gap <= gap:
                return record.grad_evals
        return None


def sample_chords(n: int, count: int, seed: int):
    """n-cycle edges plus `count` distinct random chords.

    Raises:
        ConfigurationError: If the complete graph has too few free pairs
    """
    edges = {(min(i, (i + 1) % n), max(i, (i + 1) % n)) for i in range(n)}
    available = n * (n - 1) // 2 - len(edges)
    if count > available:
        raise ConfigurationError(f"Cannot add {count} chords to an {n}-cycle ({available} free pairs)")
    rng = np.random.default_rng(seed)
    added = 0
    while added < count:
        i, j = (int(v) for v in rng.integers(0, n, size=2))
        if i == j:
            continue
        edge = (min(i, j), max(i, j))
        if edge in edges:
            continue
        edges.add(edge)
        added += 1
    return edges


def build_graph(spec: GraphSpec) -> GossipMatrix:
    if spec.ring is not None:
        return build_ring(spec.ring.n)
    if spec.metropolis_lazy is not None:
        m = spec.metropolis_lazy
        return build_metropolis_lazy(m.n, sample_chords(m.n, m.chords, m.seed))
    return read_gossip_matrix(spec.file.path, spec.file.edges)


def build_objective(spec: ObjectiveSpec) -> ObjectiveSuite:
    if spec.banknote is not None:
        b = spec.banknote
        return load_banknote(b.path, b.n, b.seed, b.mu)
    if spec.synth_quadratic is not None:
        q = spec.synth_quadratic
        return synth_quadratic(q.n, q.d, q.kappa, q.seed, q.mu, q.shared_minimizer)
    s = spec.synth_logistic
    return synth_logistic(s.n, s.d, s.mu, s.seed)


def _explicit_params(algorithm: Algorithm, explicit: ExplicitParams, constants: SpectralConstants) -> Params:
    def require(*names):
        missing = [name for name in names if getattr(explicit, name) is None]
        if missing:
            raise ConfigurationError(f"Explicit {algorithm.value} params need {missing}")

    if algorithm is Algorithm.GT:
        require("eta")
        return GtParams(eta=explicit.eta)
    if algorithm is Algorithm.ACCGT:
        require("alpha", "beta")
        return AccGtParams(alpha=explicit.alpha, beta=explicit.beta)

    require("alpha", "beta", "tau", "eta", "p", "q")
    gamma = explicit.gamma if explicit.gamma is not None else coupling_gamma(explicit.alpha, explicit.tau)
    eta_w = None
    if algorithm is Algorithm.OGT:
        eta_w = explicit.eta_w if explicit.eta_w is not None else constants.eta_w
    return HyperParams(alpha=explicit.alpha, beta=explicit.beta, gamma=gamma, tau=explicit.tau,
                       eta=explicit.eta, p=explicit.p, q=explicit.q, eta_w=eta_w)


def resolve_params(config: RunConfig, suite: ObjectiveSuite, constants: SpectralConstants) -> Params:
    """Turn the configured parameter source into concrete parameters.

    Raises:
        ConfigurationError: Acc-GT with theorem or scaled parameters, or missing explicit values
    """
    algorithm = config.algorithm
    source = config.params
    if source.explicit is not None:
        return _explicit_params(algorithm, source.explicit, constants)

    if source.theorem is not None or source.scaled is not None:
        if algorithm is Algorithm.GT:
            return derive_gt_params(constants.delta, suite.L)
        if algorithm is Algorithm.ACCGT:
            raise ConfigurationError("Acc-GT has no theorem parameters; use fig1_preset or explicit")
        scaled = source.scaled is not None
        if algorithm is Algorithm.SSGT:
            derive = scaled_ssgt_params if scaled else derive_ssgt_params
            return derive(suite.kappa, constants.delta, suite.L, suite.mu)
        derive = scaled_ogt_params if scaled else derive_ogt_params
        params = derive(suite.kappa, constants.delta_tilde, suite.L, suite.mu)
        return replace(params, eta_w=constants.eta_w)

    graph_id = source.fig1_preset.graph_id
    if algorithm is Algorithm.GT:
        return derive_gt_params(constants.delta, suite.L)
    if algorithm is Algorithm.ACCGT:
        return preset_fig1_accgt(graph_id, suite.mu)
    params = preset_fig1(graph_id, suite.mu, eta_w=constants.eta_w)
    return params if algorithm is Algorithm.OGT else replace(params, eta_w=None)


class _Runner:
    """Binds one configured run; step() advances the state by one round."""

    def __init__(self, algorithm: Algorithm, W: GossipMatrix, suite: ObjectiveSuite, params: Params,
                 seed: int, mode, counter: GradientCounter):
        self.algorithm = algorithm
        self.W = W
        self.suite = suite
        self.params = params
        self.counter = counter
        self.stream = None
        if isinstance(params, HyperParams):
            self.stream = restart(seed, params.p, params.q, mode)

    def init(self, X0: np.ndarray) -> AlgoState:
        init = {
            Algorithm.GT: init_gt,
            Algorithm.ACCGT: init_accgt,
            Algorithm.SSGT: init_ssgt,
            Algorithm.OGT: init_ogt,
        }[self.algorithm]
        return init(X0, self.suite, self.counter)

    def step(self, state: AlgoState) -> AlgoState:
        if self.algorithm is Algorithm.GT:
            return step_gt(state, self.W, self.params.eta, self.suite, self.counter)
        if self.algorithm is Algorithm.ACCGT:
            return step_accgt(state, self.W, self.params.alpha, self.params.beta, self.suite.mu,
                              self.suite, self.counter)
        if self.algorithm is Algorithm.SSGT:
            return step_ssgt(state, self.W, self.params, self.stream, self.suite, self.counter)
        return step_ogt(state, self.W, self.params, self.stream, self.suite, self.counter)


def _snapshot_of(state: AlgoState) -> np.ndarray:
    return getattr(state, "Q", state.X)


def _check_finite(state: AlgoState, algorithm: Algorithm):
    for name, matrix in state_matrices(state).items():
        if not np.all(np.isfinite(matrix)):
            raise DivergenceError(iteration=state.k, algorithm=algorithm.value)


def run_diagnostics(prev_state: AlgoState, state: AlgoState, algorithm: Algorithm, params: Params,
                    suite: ObjectiveSuite, x_star: np.ndarray, f_star: float, tolerance: float) -> float:
    """Run every identity check for the method and return the tracking residual.

    Raises:
        DiagnosticError: The first check whose residual exceeds tolerance
    """
    checks = {"tracking": diagnostics.tracking_residual(state, suite)}
    if algorithm in (Algorithm.SSGT, Algorithm.OGT):
        checks["snapshot_average"] = diagnostics.snapshot_average_residual(state)
        checks["m_cache"] = diagnostics.m_cache_residual(state, suite)
        xi, zeta = state.last_draw
        checks["average_dynamics"] = diagnostics.check_average_dynamics(prev_state, state, xi, zeta, suite, params)
    if algorithm is Algorithm.OGT:
        checks["block_average"] = diagnostics.block_average_residual(state)
        checks["block_shift"] = diagnostics.block_shift_residual(prev_state, state, params, suite)

    for check, residual in checks.items():
        if not residual <= tolerance:
            raise DiagnosticError(check, state.k, residual, tolerance)

    slack = diagnostics.descent_inequality_slack(state, suite, x_star, f_star)
    if slack < -1e-9:
        raise DiagnosticError("descent_inequality", state.k, -slack, 1e-9)
    logger.debug(f"Diagnostics at k={state.k}: " + ", ".join(f"{c}={r:.2e}" for c, r in checks.items()))
    return checks["tracking"]


def run(config: RunConfig, settings: Optional[SimulatorSettings] = None,
        X0: Optional[np.ndarray] = None) -> RunResult:
    """Run one experiment.

    Args:
        config: Validated run configuration
        settings: Process settings (seed override, tolerances, record limit)
        X0: Initial iterate; all-zeros by default

    Returns:
        RunResult: Records ordered by k with termination reason and metadata

    Raises:
        ConfigurationError: Inconsistent agent counts or parameter sources
        NonConvergenceError: Reference solver failure
        DiagnosticError: An identity check failed
        DivergenceError: Non-finite iterates
    """
    settings = settings or get_default_settings()
    algorithm = config.algorithm
    seed = settings.seed_override if settings.seed_override is not None else config.seed

    W = build_graph(config.graph)
    suite = build_objective(config.objective)
    if W.n != suite.n:
        raise ConfigurationError(f"Graph has {W.n} agents but the objective has {suite.n}")

    psd_repaired = False
    if algorithm is Algorithm.OGT and not W.psd:
        logger.warning("Gossip matrix is not PSD; using (I + W)/2 for OGT")
        W = make_psd(W)
        psd_repaired = True

    delta = spectral_gap(W)
    constants = spectral_constants(delta)
    params = resolve_params(config, suite, constants)
    violations = check_parameter_conditions(params, suite.L, suite.mu) if isinstance(params, HyperParams) else []

    x_star = reference_minimizer(suite, settings.reference_tol, settings.reference_max_iter)
    f_star = loss(suite, x_star)
    x_star_residual = float(np.linalg.norm(full_gradient(suite, x_star)))

    counter = GradientCounter(flag_iterations=True)
    runner = _Runner(algorithm, W, suite, params, seed, config.mode, counter)
    if X0 is None:
        X0 = np.zeros((suite.n, suite.d))
    state = runner.init(X0)

    max_iters = config.stopping.max_iters
    target = config.stopping.target_loss_gap
    record_every = config.record_every or settings.record_every(max_iters)
    vectors_per_round = VECTORS_PER_ROUND[algorithm]
    diagnostics_every = config.diagnostics_every

    def make_record(current: AlgoState, tracking: Optional[float]) -> IterationRecord:
        return IterationRecord(
            k=current.k,
            vectors_sent=vectors_per_round * current.k,
            grad_evals=counter.total_evals,
            loss_gap=float(np.mean(global_losses(suite, current.X))) - f_star,
            consensus_X=consensus_error(current.X),
            consensus_Q=consensus_error(_snapshot_of(current)),
            tracking_residual=tracking,
        )

    logger.info(f"Running {algorithm.value}: n={suite.n}, d={suite.d}, delta={delta:.6g}, "
                f"kappa={suite.kappa:.6g}, max_iters={max_iters}, target={target}")
    records: List[IterationRecord] = []
    record = make_record(state, None)
    records.append(record)
    termination = MAX_ITERS
    while True:
        if target is not None and record.loss_gap <= target:
            termination = TARGET_REACHED
            break
        if state.k >= max_iters:
            break

        prev_state = state
        state = runner.step(state)
        _check_finite(state, algorithm)

        tracking = None
        if diagnostics_every and state.k % diagnostics_every == 0:
            tracking = run_diagnostics(prev_state, state, algorithm, params, suite, x_star, f_star,
                                       settings.diagnostic_tolerance)

        record = make_record(state, tracking)
        reached = target is not None and record.loss_gap <= target
        if state.k % record_every == 0 or state.k >= max_iters or reached:
            records.append(record)

    metadata = {
        "algorithm": algorithm.value,
        "seed": seed,
        "mode": config.mode.value,
        "n": suite.n,
        "d": suite.d,
        "delta": delta,
        "theta": constants.theta,
        "eta_w": constants.eta_w,
        "rho_w": constants.rho_w,
        "delta_tilde": constants.delta_tilde,
        "L": suite.L,
        "mu": suite.mu,
        "kappa": suite.kappa,
        "f_star": f_star,
        "params": params.to_dict(),
        "gt_stepsize": derive_gt_params(delta, suite.L).eta,
        "condition_violations": violations,
        "expected_gradient_fraction": (
            expected_gradient_fraction(params.p, params.q, config.mode) if isinstance(params, HyperParams) else 1.0
        ),
        "gradient_iterations": len(counter.per_iteration_flags),
        "psd_repaired": psd_repaired,
        "iterations": state.k,
        "record_every": record_every,
    }
    logger.info(f"Finished {algorithm.value} after {state.k} iterations ({termination}); "
                f"loss gap {record.loss_gap:.3e}, gradient evaluations {counter.total_evals}")
    return RunResult(
        config=config.model_dump(mode="json"),
        records=records,
        termination=termination,
        x_star_residual=x_star_residual,
        metadata=metadata,
        final_state=state,
    )
