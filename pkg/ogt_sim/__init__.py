"""
OGT Simulator
Decentralized gradient-tracking methods with loopless Chebyshev acceleration
"""

__version__ = "1.0.0"
__author__ = "Optimization Team"

from .exceptions import (
    SimulationError,
    InvalidGraphError,
    ShapeError,
    DomainError,
    PreconditionError,
    InvalidObjectiveError,
    DataError,
    ParseError,
    NonConvergenceError,
    ConfigurationError,
    DiagnosticError,
    DivergenceError,
    StorageError
)
from .graph import GossipMatrix, build_ring, build_metropolis_lazy, spectral_gap, spectral_constants
from .rng import CoupledBernoulliStream, SplitMix64, StreamMode
from .algorithms import Algorithm, HyperParams
from .harness import RunConfig, RunResult, run

__all__ = [
    'SimulationError',
    'InvalidGraphError',
    'ShapeError',
    'DomainError',
    'PreconditionError',
    'InvalidObjectiveError',
    'DataError',
    'ParseError',
    'NonConvergenceError',
    'ConfigurationError',
    'DiagnosticError',
    'DivergenceError',
    'StorageError',
    'GossipMatrix',
    'build_ring',
    'build_metropolis_lazy',
    'spectral_gap',
    'spectral_constants',
    'CoupledBernoulliStream',
    'SplitMix64',
    'StreamMode',
    'Algorithm',
    'HyperParams',
    'RunConfig',
    'RunResult',
    'run'
]
