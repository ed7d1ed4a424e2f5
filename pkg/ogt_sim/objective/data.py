"""
Problem data: the banknote CSV loader and seeded synthetic suites.
"""

import csv
import logging
from pathlib import Path
from typing import List, Tuple, Union

import numpy as np

from ..exceptions import DataError, InvalidObjectiveError, ParseError, StorageError
from .suite import ObjectiveSuite, logistic_suite, quadratic_suite

logger = logging.getLogger(__name__)

BANKNOTE_COLUMNS = 5
DEFAULT_MU = 0.01
LABEL_FLIP_RATE = 0.1


def _is_number(token: str) -> bool:
    try:
        float(token)
        return True
    except ValueError:
        return False


def read_banknote_rows(path: Union[str, Path]) -> Tuple[np.ndarray, np.ndarray]:
    """Parse `v1,v2,v3,v4,label` rows; labels 0/1 are mapped to −1/+1.

    A first line starting with a non-numeric token is treated as a header.

    Raises:
        ParseError: Malformed row or label outside {0, 1}, with its line number
    """
    features: List[List[float]] = []
    labels: List[float] = []
    try:
        with open(path, "r", encoding="utf-8", newline="") as f:
            for line_number, row in enumerate(csv.reader(f), start=1):
                if not row or all(not cell.strip() for cell in row):
                    continue
                if not features and line_number == 1 and not _is_number(row[0].strip()):
                    continue
                if len(row) != BANKNOTE_COLUMNS:
                    raise ParseError(f"Expected {BANKNOTE_COLUMNS} columns, found {len(row)}",
                                     path=str(path), line_number=line_number)
                try:
                    values = [float(cell) for cell in row]
                except ValueError:
                    raise ParseError(f"Non-numeric field in {','.join(row)!r}",
                                     path=str(path), line_number=line_number)
                label = values[4]
                if label not in (0.0, 1.0):
                    raise ParseError(f"Label must be 0 or 1, got {row[4].strip()}",
                                     path=str(path), line_number=line_number)
                features.append(values[:4])
                labels.append(2.0 * label - 1.0)
    except FileNotFoundError as e:
        raise StorageError(f"Dataset not found: {path}", path=str(path)) from e
    return np.array(features).reshape(-1, 4), np.array(labels)


def load_banknote(path: Union[str, Path], n_agents: int, seed: int, mu: float = DEFAULT_MU) -> ObjectiveSuite:
    """One banknote example per agent, sampled without replacement.

    Args:
        path: Banknote CSV file
        n_agents: Number of agents (rows sampled)
        seed: Sampling seed
        mu: ℓ₂ regularizer

    Raises:
        DataError: If the file has fewer than n_agents rows
    """
    features, labels = read_banknote_rows(path)
    if features.shape[0] < n_agents:
        raise DataError(f"Dataset has {features.shape[0]} rows, need {n_agents}",
                        details={"rows": int(features.shape[0]), "n_agents": n_agents})
    rng = np.random.default_rng(seed)
    chosen = rng.choice(features.shape[0], size=n_agents, replace=False)
    suite = logistic_suite(features[chosen], labels[chosen], mu, name="banknote")
    logger.info(f"Loaded banknote suite: n={n_agents}, L={suite.L:.4f}, mu={suite.mu:g}")
    return suite


def synth_quadratic(n: int, d: int, kappa: float, seed: int, mu: float = 1.0,
                    shared_minimizer: bool = False) -> ObjectiveSuite:
    """Diagonal quadratics with condition number exactly κ.

    Diagonal entries are log-uniform in [μ, μκ]; the first entry is pinned to
    μ and the last to μκ so that the suite constants are (μκ, μ). With
    shared_minimizer every f_i is minimized at the same point.

    Raises:
        InvalidObjectiveError: If κ < 1, or κ > 1 with a single diagonal entry
    """
    if kappa < 1:
        raise InvalidObjectiveError(f"Condition number must be >= 1, got {kappa}")
    if kappa > 1 and n * d < 2:
        raise InvalidObjectiveError("Need at least two diagonal entries for kappa > 1")
    rng = np.random.default_rng(seed)
    L = mu * kappa
    diagonal = mu * kappa ** rng.uniform(0.0, 1.0, size=n * d)
    diagonal[0] = mu
    diagonal[-1] = L
    diagonal = diagonal.reshape(n, d)

    A = np.zeros((n, d, d))
    idx = np.arange(d)
    A[:, idx, idx] = diagonal
    if shared_minimizer:
        x_star = rng.standard_normal(d)
        b = diagonal * x_star[None, :]
    else:
        b = rng.standard_normal((n, d))
    suite = quadratic_suite(A, b, name="synth_quadratic")
    logger.info(f"Generated quadratic suite n={n}, d={d}, kappa={suite.kappa:g}")
    return suite


def synth_logistic(n: int, d: int, mu: float, seed: int) -> ObjectiveSuite:
    """Gaussian features labelled by a random direction, 10% of labels flipped."""
    rng = np.random.default_rng(seed)
    features = rng.standard_normal((n, d))
    direction = rng.standard_normal(d)
    labels = np.where(features @ direction >= 0.0, 1.0, -1.0)
    flips = rng.uniform(size=n) < LABEL_FLIP_RATE
    labels[flips] = -labels[flips]
    suite = logistic_suite(features, labels, mu, name="synth_logistic")
    logger.info(f"Generated logistic suite n={n}, d={d}, L={suite.L:.4f}, mu={mu:g}")
    return suite


def quadratic_minimizer(suite: ObjectiveSuite) -> np.ndarray:
    """Closed-form x* = (mean A_i)⁻¹ (mean b_i)."""
    return np.linalg.solve(suite.A.mean(axis=0), suite.b.mean(axis=0))
