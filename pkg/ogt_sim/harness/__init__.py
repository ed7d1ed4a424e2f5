"""
Experiment harness: configuration, runs, sweeps and result files.
"""

from .config import (
    GraphSpec,
    ObjectiveSpec,
    ParamsSpec,
    RunConfig,
    SweepConfig,
    load_run_config,
    load_sweep_config,
    parse_run_config,
    parse_sweep_config,
)
from .experiments import (
    ScalingRow,
    fig1_configs,
    fit_scaling_exponent,
    loss_gap_slope,
    reproduce_fig1,
    sweep_scaling,
)
from .output import CSV_HEADER, emit_csv, emit_metadata, metadata_path, read_csv
from .runner import (
    MAX_ITERS,
    TARGET_REACHED,
    IterationRecord,
    RunResult,
    build_graph,
    build_objective,
    resolve_params,
    run,
    run_diagnostics,
    sample_chords,
)

__all__ = [
    'GraphSpec',
    'ObjectiveSpec',
    'ParamsSpec',
    'RunConfig',
    'SweepConfig',
    'load_run_config',
    'load_sweep_config',
    'parse_run_config',
    'parse_sweep_config',
    'ScalingRow',
    'fig1_configs',
    'fit_scaling_exponent',
    'loss_gap_slope',
    'reproduce_fig1',
    'sweep_scaling',
    'CSV_HEADER',
    'emit_csv',
    'emit_metadata',
    'metadata_path',
    'read_csv',
    'MAX_ITERS',
    'TARGET_REACHED',
    'IterationRecord',
    'RunResult',
    'build_graph',
    'build_objective',
    'resolve_params',
    'run',
    'run_diagnostics',
    'sample_chords',
]
