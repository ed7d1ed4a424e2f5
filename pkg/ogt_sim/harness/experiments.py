"""
Multi-run experiments: ring-size scaling sweeps and the four-method comparison.
"""

import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..algorithms.params import Algorithm, GraphPreset, theorem_iteration_budget
from ..config.settings import SimulatorSettings, get_default_settings
from ..exceptions import ConfigurationError
from ..graph.gossip import build_ring
from ..graph.spectral import spectral_constants, spectral_gap
from .config import RunConfig, SweepConfig
from .output import emit_csv, emit_metadata, metadata_path
from .runner import IterationRecord, RunResult, run

logger = logging.getLogger(__name__)

FULL_AGENTS = 200
FULL_CHORDS = 50
DESK_AGENTS = 50
DESK_CHORDS = 12
FIG1_MU = 0.01
FIG1_TARGET = 1e-10
DEFAULT_GRAPH_SEED = 7
DEFAULT_SAMPLE_SEED = 0
DESK_DIMENSION = 4


@dataclass(frozen=True)
class ScalingRow:
    n: int
    delta: float
    delta_tilde: float
    iters_to_target: Optional[int]


def loss_gap_slope(records: Sequence[IterationRecord], fraction: float = 0.5) -> float:
    """Least-squares slope of log10(loss_gap) per iteration over the final fraction of records.

    Non-positive gaps are dropped.

    Raises:
        ValueError: If fewer than two usable records remain
    """
    if not (0.0 < fraction <= 1.0):
        raise ValueError(f"fraction must lie in (0, 1], got {fraction}")
    start = int(math.floor(len(records) * (1.0 - fraction)))
    tail = [r for r in records[start:] if r.loss_gap > 0.0]
    if len(tail) < 2:
        raise ValueError("Need at least two records with positive loss gap")
    k = np.array([r.k for r in tail], dtype=np.float64)
    log_gap = np.log10([r.loss_gap for r in tail])
    slope, _ = np.polyfit(k, log_gap, 1)
    return float(slope)


def fit_scaling_exponent(rows: Sequence[ScalingRow]) -> float:
    """Least-squares s in iters ∝ nˢ over rows that reached the target."""
    usable = [(row.n, row.iters_to_target) for row in rows if row.iters_to_target]
    if len(usable) < 2:
        raise ValueError("Need at least two sizes that reached the target")
    log_n = np.log([n for n, _ in usable])
    log_iters = np.log([iters for _, iters in usable])
    slope, _ = np.polyfit(log_n, log_iters, 1)
    return float(slope)


def sweep_scaling(sweep: SweepConfig, settings: Optional[SimulatorSettings] = None) -> List[ScalingRow]:
    """Run the method with theorem or scaled parameters on rings of increasing size.

    The iteration cap defaults to the theorem budget of each size.
    """
    if sweep.algorithm not in (Algorithm.SSGT, Algorithm.OGT):
        raise ConfigurationError("Scaling sweeps need ssgt or ogt")
    rows = []
    for n in sweep.sizes:
        constants = spectral_constants(spectral_gap(build_ring(n)))
        max_iters = sweep.max_iters or theorem_iteration_budget(
            sweep.algorithm, sweep.kappa, constants.delta, constants.delta_tilde)
        config = RunConfig.model_validate({
            "algorithm": sweep.algorithm.value,
            "graph": {"ring": {"n": n}},
            "objective": {"synth_quadratic": {"n": n, "d": sweep.d, "kappa": sweep.kappa, "seed": sweep.seed}},
            "params": {sweep.params.value: {}},
            "seed": sweep.seed,
            "mode": sweep.mode.value,
            "stopping": {"max_iters": max_iters, "target_loss_gap": sweep.target_gap},
        })
        result = run(config, settings)
        row = ScalingRow(n=n, delta=constants.delta, delta_tilde=constants.delta_tilde,
                         iters_to_target=result.iterations_to(sweep.target_gap))
        logger.info(f"Sweep n={n}: delta={row.delta:.6g}, iterations to target {row.iters_to_target}")
        rows.append(row)
    return rows


def fig1_configs(dataset_path: Optional[str], desk: bool, max_iters: int,
                 seed: int = DEFAULT_SAMPLE_SEED) -> Dict[Tuple[str, str], RunConfig]:
    """Configs for every (network, method) pair of the comparison.

    Full scale uses the banknote data with 200 agents; desk scale a
    synthetic logistic problem with 50 agents.
    """
    if desk:
        n, chords = DESK_AGENTS, DESK_CHORDS
        objective = {"synth_logistic": {"n": n, "d": DESK_DIMENSION, "mu": FIG1_MU, "seed": seed}}
    else:
        if dataset_path is None:
            raise ConfigurationError("Full-scale reproduction needs the banknote dataset path")
        n, chords = FULL_AGENTS, FULL_CHORDS
        objective = {"banknote": {"path": str(dataset_path), "n": n, "mu": FIG1_MU, "seed": seed}}

    graphs = {
        GraphPreset.CYCLE: {"ring": {"n": n}},
        GraphPreset.DENSER: {"metropolis_lazy": {"n": n, "chords": chords, "seed": DEFAULT_GRAPH_SEED}},
    }
    configs = {}
    for graph_id, graph in graphs.items():
        for algorithm in Algorithm:
            if algorithm is Algorithm.SSGT:
                params = {"theorem": {}}
            else:
                params = {"fig1_preset": {"graph_id": graph_id.value}}
            configs[(graph_id.value, algorithm.value)] = RunConfig.model_validate({
                "algorithm": algorithm.value,
                "graph": graph,
                "objective": objective,
                "params": params,
                "seed": seed,
                "stopping": {"max_iters": max_iters, "target_loss_gap": FIG1_TARGET},
            })
    return configs


def reproduce_fig1(dataset_path: Optional[str], desk: bool, out_dir: Union[str, Path], max_iters: int,
                   settings: Optional[SimulatorSettings] = None) -> Dict[Tuple[str, str], RunResult]:
    """Run all four methods on both networks and write `<network>_<method>.csv` files."""
    settings = settings or get_default_settings()
    out_dir = Path(out_dir)
    results = {}
    for (graph_id, algorithm), config in fig1_configs(dataset_path, desk, max_iters).items():
        result = run(config, settings)
        csv_path = emit_csv(result, out_dir / f"{graph_id}_{algorithm}.csv")
        emit_metadata(result, metadata_path(csv_path))
        results[(graph_id, algorithm)] = result
    return results
