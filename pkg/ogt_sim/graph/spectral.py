"""
Spectral quantities of gossip matrices.
Spectral gap, the accelerated-mixing constants derived from it, and the
loopless Chebyshev bound check.
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..exceptions import DomainError, InvalidGraphError, NonConvergenceError, PreconditionError
from .gossip import GossipMatrix

logger = logging.getLogger(__name__)

GAP_FLOOR = 1e-14
JACOBI_TOL = 1e-14
JACOBI_MAX_SWEEPS = 100
LCA_BOUND = 7.0
LCA_DEFAULT_GRID = 10001


@dataclass(frozen=True)
class SpectralConstants:
    """Constants of the accelerated gossip operator derived from δ."""
    delta: float
    theta: float
    eta_w: float
    rho_w: float
    delta_tilde: float


@dataclass(frozen=True)
class BoundReport:
    """Outcome of a numerical bound check."""
    max_ratio: float
    bound: float
    worst_k: int

    @property
    def passed(self) -> bool:
        return self.max_ratio <= self.bound


def jacobi_eigenvalues(S: np.ndarray, tol: float = JACOBI_TOL) -> np.ndarray:
    """Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.

    Args:
        S: Symmetric square matrix
        tol: Stop once the off-diagonal Frobenius mass drops below tol * max(1, ||S||_F)

    Returns:
        np.ndarray: Eigenvalues in ascending order

    Raises:
        NonConvergenceError: When the sweep cap is reached
    """
    A = np.array(S, dtype=np.float64)
    n = A.shape[0]
    if n == 0:
        return np.zeros(0)
    threshold = tol * max(1.0, float(np.linalg.norm(A)))

    for sweep in range(JACOBI_MAX_SWEEPS):
        off = math.sqrt(max(0.0, float(np.sum(A * A) - np.sum(np.diag(A) ** 2))))
        if off < threshold:
            logger.debug(f"Jacobi converged after {sweep} sweeps (off={off:.3e})")
            return np.sort(np.diag(A))

        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if apq == 0.0:
                    continue
                theta = (A[q, q] - A[p, p]) / (2.0 * apq)
                sign = 1.0 if theta >= 0 else -1.0
                t = sign / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c

                col_p = A[:, p].copy()
                col_q = A[:, q].copy()
                A[:, p] = c * col_p - s * col_q
                A[:, q] = s * col_p + c * col_q
                row_p = A[p, :].copy()
                row_q = A[q, :].copy()
                A[p, :] = c * row_p - s * row_q
                A[q, :] = s * row_p + c * row_q
                A[p, q] = 0.0
                A[q, p] = 0.0

    off = math.sqrt(max(0.0, float(np.sum(A * A) - np.sum(np.diag(A) ** 2))))
    raise NonConvergenceError("Jacobi eigenvalue sweeps did not converge",
                              iterations=JACOBI_MAX_SWEEPS, residual=off)


def spectral_gap(W: GossipMatrix, method: str = "eigh") -> float:
    """δ = 1 − ||W − 11ᵀ/n||₂.

    Args:
        W: Gossip matrix
        method: "eigh" (LAPACK) or "jacobi" (cyclic rotations)

    Returns:
        float: Spectral gap in (0, 1]

    Raises:
        InvalidGraphError: If δ <= 1e-14 (disconnected or periodic graph)
    """
    deviation = W.weights - np.full((W.n, W.n), 1.0 / W.n)
    if method == "eigh":
        eigenvalues = np.linalg.eigvalsh(deviation)
    elif method == "jacobi":
        eigenvalues = jacobi_eigenvalues(deviation)
    else:
        raise ValueError(f"Unknown eigenvalue method: {method}")

    delta = 1.0 - float(np.max(np.abs(eigenvalues)))
    if delta <= GAP_FLOOR:
        raise InvalidGraphError("Spectral gap vanishes; graph is disconnected or periodic",
                                details={"delta": delta})
    return min(delta, 1.0)


def ring_spectral_gap(n: int) -> float:
    """Analytic gap of the lazy n-cycle from its circulant eigenvalues."""
    k = np.arange(1, n)
    eigenvalues = 0.5 + 0.5 * np.cos(2.0 * np.pi * k / n)
    return 1.0 - float(np.max(np.abs(eigenvalues)))


def spectral_constants(delta: float) -> SpectralConstants:
    """Derive θ, η_w, ρ_w and δ̃ from the spectral gap.

    Raises:
        DomainError: If δ is outside (0, 1]
    """
    if not (0.0 < delta <= 1.0):
        raise DomainError(f"Spectral gap must lie in (0, 1], got {delta}")
    radical = math.sqrt(1.0 - (1.0 - delta) ** 2)
    theta = (1.0 - radical) / (1.0 + radical)
    eta_w = (1.0 + theta) / 2.0
    rho_w = math.sqrt(eta_w)
    return SpectralConstants(delta=delta, theta=theta, eta_w=eta_w, rho_w=rho_w, delta_tilde=1.0 - rho_w)


def theta_residual(delta: float, theta: float) -> float:
    """r(θ) = (1−δ)²(1+θ)² − 4θ; zero for the θ of spectral_constants."""
    return (1.0 - delta) ** 2 * (1.0 + theta) ** 2 - 4.0 * theta


def lca_ratios(x: np.ndarray, eta_tilde: float, k_max: int) -> np.ndarray:
    """Table of T_k(x)² / η̃ᵏ for k = 0..k_max.

    Runs the recursion on S_k = T_k / η̃^{k/2}, which stays O(1) where T_k underflows.

    Returns:
        np.ndarray: Array of shape (k_max + 1, len(x))
    """
    x = np.asarray(x, dtype=np.float64)
    ratios = np.empty((k_max + 1, x.size))
    root = math.sqrt(eta_tilde)
    coefficient = (1.0 + eta_tilde) * x / root

    previous = np.ones_like(x)
    ratios[0] = 1.0
    if k_max == 0:
        return ratios
    current = np.full_like(x, 1.0 / root)
    ratios[1] = current * current
    for k in range(2, k_max + 1):
        previous, current = current, coefficient * current - previous
        ratios[k] = current * current
    return ratios


def verify_lca(delta: float, eta_tilde: Optional[float] = None, k_max: int = 2000,
               grid: int = LCA_DEFAULT_GRID) -> BoundReport:
    """Check max T_k(x)²/η̃ᵏ <= 7 on a uniform grid of [0, 1−δ].

    Args:
        delta: Spectral gap in (0, 1]
        eta_tilde: Momentum weight; defaults to (1+θ)/2
        k_max: Largest polynomial index
        grid: Number of grid points (>= 2)

    Returns:
        BoundReport: Maximum ratio, the constant 7 and the k that attained it

    Raises:
        PreconditionError: If η̃ is outside [(1+θ)/2, 1) or grid < 2
    """
    constants = spectral_constants(delta)
    if eta_tilde is None:
        eta_tilde = constants.eta_w
    if grid < 2:
        raise PreconditionError(f"Grid needs at least 2 points, got {grid}")
    if k_max < 0:
        raise PreconditionError(f"k_max must be non-negative, got {k_max}")
    if not (constants.eta_w - 1e-15 <= eta_tilde < 1.0):
        raise PreconditionError(
            f"eta_tilde={eta_tilde} outside [(1+theta)/2, 1) = [{constants.eta_w}, 1)")

    x = np.linspace(0.0, 1.0 - delta, grid)
    ratios = lca_ratios(x, eta_tilde, k_max)
    per_k = ratios.max(axis=1)
    worst_k = int(np.argmax(per_k))
    report = BoundReport(max_ratio=float(per_k[worst_k]), bound=LCA_BOUND, worst_k=worst_k)
    logger.info(f"LCA check delta={delta:g} eta_tilde={eta_tilde:.6f}: "
                f"max ratio {report.max_ratio:.6f} at k={worst_k} ({'PASS' if report.passed else 'FAIL'})")
    return report
