"""
Algorithm states and their initialisation.
"""

import logging
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Dict, Optional, Tuple, Type, Union

import numpy as np

from ..exceptions import ParseError
from ..graph.stacked import ca_stack, top_block
from ..objective.suite import GradientCounter, ObjectiveSuite, grad_all
from ..utils.storage import format_float, read_snapshot, write_snapshot

logger = logging.getLogger(__name__)

Draw = Tuple[int, float]


@dataclass(frozen=True, eq=False)
class GtState:
    """Classical gradient tracking: iterate X, tracker S and the cached ∇F(X)."""
    X: np.ndarray
    S: np.ndarray
    grad: np.ndarray
    k: int = 0


@dataclass(frozen=True, eq=False)
class AccGtState:
    X: np.ndarray
    Y: np.ndarray
    Z: np.ndarray
    S: np.ndarray
    grad: np.ndarray
    k: int = 0


@dataclass(frozen=True, eq=False)
class SsgtState:
    """SS-GT iterates at iteration k

    X is the coupled point (1−α−τ)Y + αZ + τU of this state; M caches ∇F(Q);
    last_draw is the (ξ, ζ) that produced the state (None at k = 0).
    """
    X: np.ndarray
    Y: np.ndarray
    Z: np.ndarray
    U: np.ndarray
    Q: np.ndarray
    M: np.ndarray
    G: np.ndarray
    k: int = 0
    last_draw: Optional[Draw] = None


@dataclass(frozen=True, eq=False)
class OgtState:
    """OGT iterates: n-row X, Y, Q, M and 2n-row stacks Zt, Ut, Gt."""
    X: np.ndarray
    Y: np.ndarray
    Q: np.ndarray
    M: np.ndarray
    Zt: np.ndarray
    Ut: np.ndarray
    Gt: np.ndarray
    k: int = 0
    last_draw: Optional[Draw] = None

    @property
    def Z(self) -> np.ndarray:
        return top_block(self.Zt)

    @property
    def U(self) -> np.ndarray:
        return top_block(self.Ut)

    @property
    def G(self) -> np.ndarray:
        return top_block(self.Gt)


AlgoState = Union[GtState, AccGtState, SsgtState, OgtState]

STATE_TYPES: Dict[str, Type] = {
    "gt": GtState,
    "accgt": AccGtState,
    "ssgt": SsgtState,
    "ogt": OgtState,
}


def _initial_gradient(X0: np.ndarray, suite: ObjectiveSuite, counter: Optional[GradientCounter]):
    X0 = np.array(X0, dtype=np.float64)
    return X0, grad_all(suite, X0, counter)


def init_gt(X0: np.ndarray, suite: ObjectiveSuite, counter: Optional[GradientCounter] = None) -> GtState:
    X, g0 = _initial_gradient(X0, suite, counter)
    return GtState(X=X, S=g0.copy(), grad=g0)


def init_accgt(X0: np.ndarray, suite: ObjectiveSuite, counter: Optional[GradientCounter] = None) -> AccGtState:
    X, g0 = _initial_gradient(X0, suite, counter)
    return AccGtState(X=X, Y=X.copy(), Z=X.copy(), S=g0.copy(), grad=g0)


def init_ssgt(X0: np.ndarray, suite: ObjectiveSuite, counter: Optional[GradientCounter] = None) -> SsgtState:
    """Y⁰ = Z⁰ = U⁰ = Q⁰ = X⁰ and G⁰ = M⁰ = ∇F(X⁰)."""
    X, g0 = _initial_gradient(X0, suite, counter)
    return SsgtState(X=X, Y=X.copy(), Z=X.copy(), U=X.copy(), Q=X.copy(), M=g0, G=g0.copy())


def init_ogt(X0: np.ndarray, suite: ObjectiveSuite, counter: Optional[GradientCounter] = None) -> OgtState:
    """Y⁰ = Q⁰ = X⁰, Zt⁰ = Ut⁰ = ca(X⁰), Gt⁰ = ca(∇F(X⁰)), M⁰ = ∇F(X⁰)."""
    X, g0 = _initial_gradient(X0, suite, counter)
    return OgtState(X=X, Y=X.copy(), Q=X.copy(), M=g0, Zt=ca_stack(X), Ut=ca_stack(X), Gt=ca_stack(g0))


def state_matrices(state: AlgoState) -> Dict[str, np.ndarray]:
    """Matrix fields of a state by name, in declaration order."""
    return {f.name: getattr(state, f.name) for f in fields(state) if f.name not in ("k", "last_draw")}


def algorithm_of(state: AlgoState) -> str:
    for name, state_type in STATE_TYPES.items():
        if isinstance(state, state_type):
            return name
    raise TypeError(f"Unknown state type {type(state).__name__}")


def save_state(path: Union[str, Path], state: AlgoState) -> Path:
    """Write a state snapshot (one named section per matrix)."""
    header = {"algorithm": algorithm_of(state), "k": str(state.k)}
    draw = getattr(state, "last_draw", None)
    if draw is not None:
        header["draw"] = f"{draw[0]} {format_float(draw[1])}"
    return write_snapshot(path, header, state_matrices(state))


def load_state(path: Union[str, Path]) -> AlgoState:
    """Restore a state written by save_state.

    Raises:
        ParseError: Unknown algorithm or missing matrix sections
    """
    header, matrices = read_snapshot(path)
    name = header.get("algorithm")
    if name not in STATE_TYPES:
        raise ParseError(f"Unknown algorithm {name!r} in snapshot", path=str(path))
    state_type = STATE_TYPES[name]
    wanted = [f.name for f in fields(state_type) if f.name not in ("k", "last_draw")]
    missing = [field_name for field_name in wanted if field_name not in matrices]
    if missing:
        raise ParseError(f"Snapshot lacks sections {missing}", path=str(path))

    try:
        kwargs = {field_name: matrices[field_name] for field_name in wanted}
        kwargs["k"] = int(header.get("k", "0"))
        if "draw" in header and "last_draw" in {f.name for f in fields(state_type)}:
            xi, zeta = header["draw"].split()
            kwargs["last_draw"] = (int(xi), float(zeta))
    except ValueError as e:
        raise ParseError(f"Malformed snapshot header: {e}", path=str(path)) from e
    logger.info(f"Loaded {name} state at k={kwargs['k']} from {path}")
    return state_type(**kwargs)
