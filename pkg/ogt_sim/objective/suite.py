"""
Local objective suites.
Quadratic and ℓ₂-regularized logistic local functions with counted gradient
oracles, smoothness constants and the centralized reference minimizer.
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional

import numpy as np
from scipy.special import expit

from ..exceptions import InvalidObjectiveError, NonConvergenceError, ShapeError

logger = logging.getLogger(__name__)

PSD_TOL = 1e-12
REFERENCE_TOL = 1e-13
REFERENCE_MAX_ITER = 1_000_000
REFINEMENT_STEPS = 5


class ObjectiveKind(str, Enum):
    QUADRATIC = "quadratic"
    LOGISTIC_L2 = "logistic_l2"


@dataclass
class GradientCounter:
    """Counts single-agent gradient evaluations.

    total_evals never decreases during a run; reset() is meant for run start.
    """
    total_evals: int = 0
    flag_iterations: bool = False
    per_iteration_flags: List[int] = field(default_factory=list)

    def record(self, evals: int, iteration: Optional[int] = None):
        """Add evals; log the iteration when flagging is on."""
        self.total_evals += evals
        if self.flag_iterations and iteration is not None:
            if not self.per_iteration_flags or self.per_iteration_flags[-1] != iteration:
                self.per_iteration_flags.append(iteration)

    def reset(self):
        self.total_evals = 0
        self.per_iteration_flags.clear()


@dataclass(frozen=True)
class ObjectiveSuite:
    """The n local functions f_i and their constants

    quadratic:   f_i(x) = ½ xᵀA_i x − b_iᵀx
    logistic_l2: f_i(x) = log(1 + exp(−y_i z_iᵀx)) + (μ/2)||x||²
    """
    kind: ObjectiveKind
    n: int
    d: int
    L: float
    mu: float
    A: Optional[np.ndarray] = field(default=None, repr=False)
    b: Optional[np.ndarray] = field(default=None, repr=False)
    features: Optional[np.ndarray] = field(default=None, repr=False)
    labels: Optional[np.ndarray] = field(default=None, repr=False)
    mu_reg: float = 0.0
    name: str = ""

    @property
    def kappa(self) -> float:
        return self.L / self.mu


def quadratic_suite(A, b, name: str = "quadratic") -> ObjectiveSuite:
    """Build a quadratic suite from stacked A (n×d×d) and b (n×d).

    Raises:
        ShapeError: On inconsistent shapes
        InvalidObjectiveError: If some A_i is not symmetric positive definite
    """
    A = np.array(A, dtype=np.float64)
    b = np.array(b, dtype=np.float64)
    if A.ndim != 3 or A.shape[1] != A.shape[2]:
        raise ShapeError("Quadratic data A must be n×d×d", actual=A.shape)
    n, d, _ = A.shape
    if b.shape != (n, d):
        raise ShapeError("Quadratic data b must be n×d", expected=(n, d), actual=b.shape)
    if not np.allclose(A, np.transpose(A, (0, 2, 1)), rtol=0.0, atol=1e-12):
        raise InvalidObjectiveError("Quadratic matrices A_i must be symmetric")
    L, mu = _quadratic_constants(A)
    A.setflags(write=False)
    b.setflags(write=False)
    return ObjectiveSuite(kind=ObjectiveKind.QUADRATIC, n=n, d=d, L=L, mu=mu, A=A, b=b, name=name)


def logistic_suite(features, labels, mu_reg: float, name: str = "logistic") -> ObjectiveSuite:
    """Build an ℓ₂-logistic suite with one training example per agent.

    Raises:
        InvalidObjectiveError: If labels are not ±1 or μ_reg <= 0
    """
    features = np.array(features, dtype=np.float64)
    labels = np.array(labels, dtype=np.float64)
    if features.ndim != 2 or labels.shape != (features.shape[0],):
        raise ShapeError("Logistic data must be n×d features with n labels",
                         actual=(features.shape, labels.shape))
    if not np.all(np.isin(labels, (-1.0, 1.0))):
        raise InvalidObjectiveError("Logistic labels must be -1 or +1")
    if mu_reg <= 0:
        raise InvalidObjectiveError(f"Regularizer must be positive, got {mu_reg}")
    n, d = features.shape
    L = float(np.max(np.sum(features * features, axis=1))) / 4.0 + mu_reg
    features.setflags(write=False)
    labels.setflags(write=False)
    return ObjectiveSuite(kind=ObjectiveKind.LOGISTIC_L2, n=n, d=d, L=L, mu=float(mu_reg),
                          features=features, labels=labels, mu_reg=float(mu_reg), name=name)


def _quadratic_constants(A: np.ndarray):
    eigenvalues = np.linalg.eigvalsh(A)
    smallest = float(eigenvalues.min())
    if smallest < -PSD_TOL:
        raise InvalidObjectiveError(f"Quadratic data is not PSD (smallest eigenvalue {smallest:.3e})")
    if smallest <= PSD_TOL:
        raise InvalidObjectiveError("Quadratic data is not strongly convex (zero eigenvalue)")
    return float(eigenvalues.max()), smallest


def smoothness_constants(suite: ObjectiveSuite):
    """Return (L, μ) recomputed from the suite data."""
    if suite.kind is ObjectiveKind.QUADRATIC:
        return _quadratic_constants(suite.A)
    L = float(np.max(np.sum(suite.features * suite.features, axis=1))) / 4.0 + suite.mu_reg
    return L, suite.mu_reg


def _check_rows(suite: ObjectiveSuite, X: np.ndarray):
    if X.ndim != 2 or X.shape != (suite.n, suite.d):
        raise ShapeError("Iterate matrix must be n×d", expected=(suite.n, suite.d), actual=X.shape)


def _stacked_gradient(suite: ObjectiveSuite, X: np.ndarray) -> np.ndarray:
    if suite.kind is ObjectiveKind.QUADRATIC:
        return np.einsum("ijk,ik->ij", suite.A, X) - suite.b
    margins = suite.labels * np.sum(suite.features * X, axis=1)
    weights = -suite.labels * expit(-margins)
    return weights[:, None] * suite.features + suite.mu_reg * X


def grad_all(suite: ObjectiveSuite, X: np.ndarray, counter: Optional[GradientCounter] = None,
             iteration: Optional[int] = None) -> np.ndarray:
    """Row i is ∇f_i(x_i).

    Args:
        suite: Objective suite
        X: n×d iterate matrix
        counter: Incremented by n; None evaluates uncounted (diagnostics)
        iteration: Iteration tag for the counter flag log

    Returns:
        np.ndarray: n×d gradient stack
    """
    X = np.asarray(X, dtype=np.float64)
    _check_rows(suite, X)
    if counter is not None:
        counter.record(suite.n, iteration)
    return _stacked_gradient(suite, X)


def grad_at_common(suite: ObjectiveSuite, x: np.ndarray, counter: Optional[GradientCounter] = None,
                   iteration: Optional[int] = None) -> np.ndarray:
    """Every agent's gradient at the same point x."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (suite.d,):
        raise ShapeError("Common point must be a d-vector", expected=(suite.d,), actual=x.shape)
    return grad_all(suite, np.tile(x, (suite.n, 1)), counter, iteration)


def full_gradient(suite: ObjectiveSuite, x: np.ndarray) -> np.ndarray:
    """∇f(x) of the average objective (uncounted)."""
    return grad_at_common(suite, x).mean(axis=0)


def local_losses(suite: ObjectiveSuite, X: np.ndarray) -> np.ndarray:
    """n-vector of f_i(x_i)."""
    X = np.asarray(X, dtype=np.float64)
    _check_rows(suite, X)
    if suite.kind is ObjectiveKind.QUADRATIC:
        return 0.5 * np.einsum("ij,ijk,ik->i", X, suite.A, X) - np.sum(suite.b * X, axis=1)
    margins = suite.labels * np.sum(suite.features * X, axis=1)
    return np.logaddexp(0.0, -margins) + 0.5 * suite.mu_reg * np.sum(X * X, axis=1)


def global_losses(suite: ObjectiveSuite, X: np.ndarray) -> np.ndarray:
    """n-vector of f(x_i): each row evaluated on the average objective."""
    X = np.atleast_2d(np.asarray(X, dtype=np.float64))
    if X.shape[1] != suite.d:
        raise ShapeError("Rows must be d-vectors", expected=suite.d, actual=X.shape)
    if suite.kind is ObjectiveKind.QUADRATIC:
        A_mean = suite.A.mean(axis=0)
        b_mean = suite.b.mean(axis=0)
        return 0.5 * np.einsum("ij,jk,ik->i", X, A_mean, X) - X @ b_mean
    margins = (X @ suite.features.T) * suite.labels[None, :]
    return np.logaddexp(0.0, -margins).mean(axis=1) + 0.5 * suite.mu_reg * np.sum(X * X, axis=1)


def loss(suite: ObjectiveSuite, x: np.ndarray) -> float:
    """f(x) = (1/n) Σ f_i(x)."""
    return float(global_losses(suite, np.asarray(x, dtype=np.float64)[None, :])[0])


def reference_minimizer(suite: ObjectiveSuite, tol: float = REFERENCE_TOL,
                        max_iter: int = REFERENCE_MAX_ITER) -> np.ndarray:
    """Centralized minimizer x* with ||∇f(x*)|| <= tol.

    Quadratic suites solve the averaged linear system with a few refinement
    steps; logistic suites run Nesterov's accelerated gradient method with
    stepsize 1/L and momentum (√κ−1)/(√κ+1).

    Raises:
        ValueError: If tol <= 0
        NonConvergenceError: If max_iter is reached first
    """
    if tol <= 0:
        raise ValueError(f"Reference tolerance must be positive, got {tol}")

    if suite.kind is ObjectiveKind.QUADRATIC:
        A_mean = suite.A.mean(axis=0)
        x = np.linalg.solve(A_mean, suite.b.mean(axis=0))
        for _ in range(REFINEMENT_STEPS):
            residual = float(np.linalg.norm(full_gradient(suite, x)))
            if residual <= tol:
                break
            x = x - np.linalg.solve(A_mean, full_gradient(suite, x))
        residual = float(np.linalg.norm(full_gradient(suite, x)))
        if residual > tol:
            logger.warning(f"Linear solve residual {residual:.3e} above tolerance {tol:.1e} (round-off floor)")
        logger.info(f"Reference minimizer (direct solve): ||grad|| = {residual:.3e}")
        return x

    kappa = suite.L / suite.mu
    momentum = (math.sqrt(kappa) - 1.0) / (math.sqrt(kappa) + 1.0)
    step = 1.0 / suite.L
    x = np.zeros(suite.d)
    x_prev = x.copy()
    residual = float("inf")
    for iteration in range(max_iter):
        gradient = full_gradient(suite, x)
        residual = float(np.linalg.norm(gradient))
        if residual <= tol:
            logger.info(f"Reference minimizer (Nesterov) converged in {iteration} iterations, "
                        f"||grad|| = {residual:.3e}")
            return x
        y = x + momentum * (x - x_prev)
        x_prev = x
        x = y - step * full_gradient(suite, y)

    raise NonConvergenceError(f"Nesterov reference solver reached {max_iter} iterations",
                              iterations=max_iter, residual=residual)
