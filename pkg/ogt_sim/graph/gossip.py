"""
Gossip matrix construction.
Symmetric doubly-stochastic mixing weights over undirected agent graphs.
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import FrozenSet, Iterable, Optional, Set, Tuple

import numpy as np

from ..exceptions import InvalidGraphError, ShapeError

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]

ROW_SUM_TOL = 1e-12
PSD_TOL = 1e-12


def normalize_edges(edges: Iterable[Tuple[int, int]]) -> FrozenSet[Edge]:
    """Return undirected edges as (min, max) pairs.

    Raises:
        InvalidGraphError: On self-loops or negative indices
    """
    normalized: Set[Edge] = set()
    for i, j in edges:
        i, j = int(i), int(j)
        if i == j:
            raise InvalidGraphError(f"Self-loop ({i}, {j}) in edge set")
        if i < 0 or j < 0:
            raise InvalidGraphError(f"Negative agent index in edge ({i}, {j})")
        normalized.add((min(i, j), max(i, j)))
    return frozenset(normalized)


def is_connected(n: int, edges: Iterable[Edge]) -> bool:
    """Breadth-first connectivity test of the undirected graph."""
    if n <= 1:
        return True
    neighbors = [[] for _ in range(n)]
    for i, j in edges:
        neighbors[i].append(j)
        neighbors[j].append(i)
    seen = {0}
    queue = deque([0])
    while queue:
        node = queue.popleft()
        for nxt in neighbors[node]:
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return len(seen) == n


@dataclass(frozen=True)
class GossipMatrix:
    """Validated gossip matrix W

    Symmetric, doubly stochastic, non-negative and supported on edge_set.
    The weights array is read-only.
    """
    n: int
    weights: np.ndarray = field(repr=False)
    edge_set: FrozenSet[Edge]
    psd: bool

    def __post_init__(self):
        weights = self.weights
        if weights.shape != (self.n, self.n):
            raise ShapeError("Gossip weights must be n-by-n", expected=(self.n, self.n), actual=weights.shape)
        if not np.array_equal(weights, weights.T):
            raise InvalidGraphError("Gossip matrix is not symmetric")
        if np.any(weights < 0):
            raise InvalidGraphError("Gossip matrix has negative entries")
        row_sums = weights.sum(axis=1)
        if np.max(np.abs(row_sums - 1.0)) > ROW_SUM_TOL:
            raise InvalidGraphError("Gossip matrix rows do not sum to 1",
                                    details={"max_deviation": float(np.max(np.abs(row_sums - 1.0)))})
        for i, j in zip(*np.nonzero(weights)):
            if i < j and (int(i), int(j)) not in self.edge_set:
                raise InvalidGraphError(f"Positive weight W[{i}][{j}] outside the edge set")
        for i, j in self.edge_set:
            if j >= self.n:
                raise InvalidGraphError(f"Edge ({i}, {j}) references agent outside 0..{self.n - 1}")
        weights.setflags(write=False)

    @classmethod
    def from_weights(cls, weights, edge_set: Optional[Iterable[Edge]] = None,
                     psd: Optional[bool] = None) -> "GossipMatrix":
        """Build from a raw weight array.

        Args:
            weights: n-by-n array-like
            edge_set: Undirected edges; derived from positive off-diagonals if None
            psd: PSD flag; checked by eigendecomposition if None

        Returns:
            GossipMatrix: Validated matrix
        """
        array = np.array(weights, dtype=np.float64)
        if array.ndim != 2 or array.shape[0] != array.shape[1]:
            raise ShapeError("Gossip weights must be square", actual=array.shape)
        n = array.shape[0]
        if edge_set is None:
            rows, cols = np.nonzero(np.triu(array, k=1))
            edges = frozenset((int(i), int(j)) for i, j in zip(rows, cols))
        else:
            edges = normalize_edges(edge_set)
        if psd is None:
            psd = bool(np.linalg.eigvalsh(array).min() >= -PSD_TOL)
        return cls(n=n, weights=array, edge_set=edges, psd=psd)

    def is_regular(self) -> bool:
        """Positive diagonal and connected support."""
        if np.any(np.diag(self.weights) <= 0):
            return False
        positive = [(i, j) for i, j in self.edge_set if self.weights[i, j] > 0]
        return is_connected(self.n, positive)

    def mix(self, A: np.ndarray) -> np.ndarray:
        """One gossip round W @ A."""
        if A.shape[0] != self.n:
            raise ShapeError("Mixing input must have n rows", expected=self.n, actual=A.shape)
        return self.weights @ A

    def degrees(self) -> np.ndarray:
        deg = np.zeros(self.n, dtype=int)
        for i, j in self.edge_set:
            deg[i] += 1
            deg[j] += 1
        return deg


def build_ring(n: int) -> GossipMatrix:
    """n-cycle with weight 1/2 on the diagonal and 1/4 per cycle edge.

    Raises:
        InvalidGraphError: For n < 3 (the 2-cycle duplicates its edge)
    """
    if n < 3:
        raise InvalidGraphError(f"Ring needs n >= 3 agents, got {n}")
    weights = np.zeros((n, n))
    idx = np.arange(n)
    weights[idx, idx] = 0.5
    weights[idx, (idx + 1) % n] = 0.25
    weights[idx, (idx - 1) % n] = 0.25
    edges = normalize_edges((i, (i + 1) % n) for i in range(n))
    logger.debug(f"Built ring gossip matrix with n={n}")
    # eigenvalues 1/2 + cos(2*pi*k/n)/2 are non-negative
    return GossipMatrix(n=n, weights=weights, edge_set=edges, psd=True)


def build_metropolis_lazy(n: int, edge_set: Iterable[Edge]) -> GossipMatrix:
    """Lazy Metropolis weights W_ij = 1 / (2 max(deg i, deg j)).

    Raises:
        InvalidGraphError: Self-loops, out-of-range agents or a disconnected graph
    """
    edges = normalize_edges(edge_set)
    if any(j >= n for _, j in edges):
        raise InvalidGraphError(f"Edge set references agents outside 0..{n - 1}")
    if not is_connected(n, edges):
        raise InvalidGraphError("Edge graph is disconnected")

    deg = np.zeros(n, dtype=int)
    for i, j in edges:
        deg[i] += 1
        deg[j] += 1

    weights = np.zeros((n, n))
    for i, j in edges:
        w = 1.0 / (2.0 * max(deg[i], deg[j]))
        weights[i, j] = w
        weights[j, i] = w
    off_diagonal = weights.sum(axis=1)
    weights[np.arange(n), np.arange(n)] = 1.0 - off_diagonal
    logger.debug(f"Built lazy Metropolis gossip matrix with n={n}, |E|={len(edges)}")
    # every diagonal entry is >= 1/2, so W is diagonally dominant
    return GossipMatrix(n=n, weights=weights, edge_set=edges, psd=True)


def build_complete(n: int) -> GossipMatrix:
    """Exact averaging W = 11^T / n."""
    if n < 1:
        raise InvalidGraphError(f"Complete graph needs n >= 1, got {n}")
    weights = np.full((n, n), 1.0 / n)
    edges = frozenset((i, j) for i in range(n) for j in range(i + 1, n))
    return GossipMatrix(n=n, weights=weights, edge_set=edges, psd=True)


def make_psd(W: GossipMatrix) -> GossipMatrix:
    """Return the lazy matrix (I + W) / 2, which is always PSD."""
    weights = (np.eye(W.n) + W.weights) / 2.0
    return GossipMatrix(n=W.n, weights=weights, edge_set=W.edge_set, psd=True)
