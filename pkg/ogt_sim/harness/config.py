"""
Run and sweep configuration documents.
JSON schemas validated with pydantic; see docs/RUN_CONFIG.md.
"""

import json
import logging
from enum import Enum
from pathlib import Path
from typing import List, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, PositiveFloat, PositiveInt, ValidationError, model_validator

from ..algorithms.params import Algorithm, GraphPreset
from ..exceptions import ConfigurationError, StorageError
from ..rng import StreamMode

logger = logging.getLogger(__name__)

MODEL_CONFIG = ConfigDict(extra="forbid", frozen=True)


def _exactly_one(model: BaseModel, kind: str):
    chosen = [name for name in type(model).model_fields if getattr(model, name) is not None]
    if len(chosen) != 1:
        raise ValueError(f"{kind} needs exactly one of {list(type(model).model_fields)}, got {chosen or 'none'}")
    return model


class RingSpec(BaseModel):
    n: int = Field(..., ge=3)

    model_config = MODEL_CONFIG


class MetropolisSpec(BaseModel):
    """n-cycle plus random chords with lazy Metropolis weights."""
    n: int = Field(..., ge=3)
    chords: int = Field(50, ge=0)
    seed: int = Field(0, ge=0)

    model_config = MODEL_CONFIG


class FileGraphSpec(BaseModel):
    path: str
    edges: Optional[str] = None

    model_config = MODEL_CONFIG


class GraphSpec(BaseModel):
    ring: Optional[RingSpec] = None
    metropolis_lazy: Optional[MetropolisSpec] = None
    file: Optional[FileGraphSpec] = None

    model_config = MODEL_CONFIG

    @model_validator(mode="after")
    def check_one_of(self):
        return _exactly_one(self, "graph")


class BanknoteSpec(BaseModel):
    path: str
    n: PositiveInt
    mu: PositiveFloat = 0.01
    seed: int = Field(0, ge=0)

    model_config = MODEL_CONFIG


class SynthQuadraticSpec(BaseModel):
    n: PositiveInt
    d: PositiveInt = 2
    kappa: float = Field(10.0, ge=1.0)
    seed: int = Field(0, ge=0)
    mu: PositiveFloat = 1.0
    shared_minimizer: bool = False

    model_config = MODEL_CONFIG


class SynthLogisticSpec(BaseModel):
    n: PositiveInt
    d: PositiveInt = 4
    mu: PositiveFloat = 0.01
    seed: int = Field(0, ge=0)

    model_config = MODEL_CONFIG


class ObjectiveSpec(BaseModel):
    banknote: Optional[BanknoteSpec] = None
    synth_quadratic: Optional[SynthQuadraticSpec] = None
    synth_logistic: Optional[SynthLogisticSpec] = None

    model_config = MODEL_CONFIG

    @model_validator(mode="after")
    def check_one_of(self):
        return _exactly_one(self, "objective")

    @property
    def n(self) -> int:
        spec = self.banknote or self.synth_quadratic or self.synth_logistic
        return spec.n


class TheoremParams(BaseModel):
    model_config = MODEL_CONFIG


class ScaledParams(BaseModel):
    """Theorem τ and α with η = gap/(8Lγ) and p = q = gap (δ, or δ̃ for OGT)."""
    model_config = MODEL_CONFIG


class Fig1PresetParams(BaseModel):
    graph_id: GraphPreset = GraphPreset.CYCLE

    model_config = MODEL_CONFIG


class ExplicitParams(BaseModel):
    """Explicit values; which fields are required depends on the algorithm.

    gt: eta. accgt: alpha, beta. ssgt/ogt: alpha, beta, tau, eta, p, q
    (gamma defaults to 4α/(4−4τ−3α); eta_w defaults to the graph's value).
    """
    alpha: Optional[PositiveFloat] = None
    beta: Optional[float] = Field(None, ge=0.0)
    gamma: Optional[PositiveFloat] = None
    tau: Optional[PositiveFloat] = None
    eta: Optional[PositiveFloat] = None
    p: Optional[PositiveFloat] = None
    q: Optional[PositiveFloat] = None
    eta_w: Optional[PositiveFloat] = None

    model_config = MODEL_CONFIG


class ParamsSpec(BaseModel):
    theorem: Optional[TheoremParams] = None
    scaled: Optional[ScaledParams] = None
    fig1_preset: Optional[Fig1PresetParams] = None
    explicit: Optional[ExplicitParams] = None

    model_config = MODEL_CONFIG

    @model_validator(mode="after")
    def check_one_of(self):
        return _exactly_one(self, "params")


class StoppingSpec(BaseModel):
    max_iters: int = Field(1000, ge=0)
    target_loss_gap: Optional[PositiveFloat] = None

    model_config = MODEL_CONFIG


class RunConfig(BaseModel):
    """One experiment: algorithm, network, objective and parameter source."""
    algorithm: Algorithm
    graph: GraphSpec
    objective: ObjectiveSpec
    params: ParamsSpec = Field(default_factory=lambda: ParamsSpec(theorem=TheoremParams()))
    seed: int = Field(0, ge=0)
    mode: StreamMode = StreamMode.COUPLED
    stopping: StoppingSpec = Field(default_factory=StoppingSpec)
    diagnostics_every: int = Field(0, ge=0)
    record_every: Optional[PositiveInt] = None

    model_config = MODEL_CONFIG


class SweepParams(str, Enum):
    THEOREM = "theorem"
    SCALED = "scaled"


class SweepConfig(BaseModel):
    """Ring-size sweep with theorem or scaled parameters."""
    algorithm: Algorithm
    params: SweepParams = SweepParams.THEOREM
    sizes: List[int] = Field(..., min_length=1)
    kappa: float = Field(50.0, ge=1.0)
    target_gap: PositiveFloat = 1e-8
    d: PositiveInt = 2
    seed: int = Field(0, ge=0)
    max_iters: Optional[PositiveInt] = None
    mode: StreamMode = StreamMode.COUPLED

    model_config = MODEL_CONFIG

    @model_validator(mode="after")
    def check_sizes(self):
        if any(n < 3 for n in self.sizes):
            raise ValueError("ring sizes must be >= 3")
        if any(b <= a for a, b in zip(self.sizes, self.sizes[1:])):
            raise ValueError("sizes must be strictly increasing")
        return self


def _validate(model_type, data):
    try:
        return model_type.model_validate(data)
    except ValidationError as e:
        raise ConfigurationError(f"Invalid {model_type.__name__}: {e}") from e


def parse_run_config(data: Union[dict, str]) -> RunConfig:
    """Validate a RunConfig from a dict or a JSON string.

    Raises:
        ConfigurationError: On schema violations
    """
    if isinstance(data, str):
        data = _parse_json(data, "<string>")
    return _validate(RunConfig, data)


def parse_sweep_config(data: Union[dict, str]) -> SweepConfig:
    if isinstance(data, str):
        data = _parse_json(data, "<string>")
    return _validate(SweepConfig, data)


def load_run_config(path: Union[str, Path]) -> RunConfig:
    """Read and validate a RunConfig JSON file."""
    config = parse_run_config(_read_json(path))
    logger.info(f"Loaded run config {path}: algorithm={config.algorithm.value}")
    return config


def load_sweep_config(path: Union[str, Path]) -> SweepConfig:
    return parse_sweep_config(_read_json(path))


def _parse_json(text: str, source: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigurationError(f"{source}: invalid JSON at line {e.lineno}: {e.msg}") from e


def _read_json(path: Union[str, Path]):
    try:
        with open(path, "r", encoding="utf-8") as f:
            text = f.read()
    except FileNotFoundError as e:
        raise StorageError(f"Config file not found: {path}", path=str(path)) from e
    except OSError as e:
        raise StorageError(f"Cannot read config {path}: {e}", path=str(path)) from e
    return _parse_json(text, str(path))
