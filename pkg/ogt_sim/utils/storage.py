"""
Plain-text artifact storage.
Gossip matrices, edge lists and sectioned state snapshots.
"""

import logging
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Tuple, Union

import numpy as np

from ..exceptions import ParseError, StorageError
from ..graph.gossip import Edge, GossipMatrix

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

FLOAT_FORMAT = "%.17g"
SNAPSHOT_MAGIC = "# ogt-sim snapshot"


def format_float(value: float) -> str:
    return FLOAT_FORMAT % value  # 17 digits round-trip float64


def _read_lines(path: PathLike) -> List[str]:
    try:
        with open(path, "r", encoding="utf-8") as f:
            return f.read().splitlines()
    except FileNotFoundError as e:
        raise StorageError(f"File not found: {path}", path=str(path)) from e
    except OSError as e:
        raise StorageError(f"Cannot read {path}: {e}", path=str(path)) from e


def _write_text(path: PathLike, text: str) -> Path:
    target = Path(path)
    try:
        target.parent.mkdir(parents=True, exist_ok=True)
        with open(target, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
    except OSError as e:
        raise StorageError(f"Cannot write {target}: {e}", path=str(target)) from e
    return target


def _parse_floats(tokens: List[str], path: PathLike, line_number: int) -> List[float]:
    try:
        return [float(token) for token in tokens]
    except ValueError:
        raise ParseError(f"Non-numeric value in {' '.join(tokens)!r}", path=str(path), line_number=line_number)


def _parse_int(token: str, path: PathLike, line_number: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"Expected integer {what}, got {token!r}", path=str(path), line_number=line_number)


def write_matrix(path: PathLike, matrix: np.ndarray) -> Path:
    """Write a square matrix: first line n, then n rows of n weights."""
    matrix = np.asarray(matrix, dtype=np.float64)
    lines = [str(matrix.shape[0])]
    lines.extend(" ".join(format_float(v) for v in row) for row in matrix)
    target = _write_text(path, "\n".join(lines) + "\n")
    logger.info(f"Matrix ({matrix.shape[0]}x{matrix.shape[1]}) written to {target}")
    return target


def read_matrix(path: PathLike) -> np.ndarray:
    """Read a square matrix in the format of write_matrix.

    Raises:
        ParseError: With the offending line number
    """
    lines = [(number, line.split()) for number, line in enumerate(_read_lines(path), start=1) if line.strip()]
    if not lines:
        raise ParseError("Empty matrix file", path=str(path))
    header_number, header = lines[0]
    if len(header) != 1:
        raise ParseError("First line must hold only n", path=str(path), line_number=header_number)
    n = _parse_int(header[0], path, header_number, "n")
    if n < 1:
        raise ParseError(f"Matrix size must be positive, got {n}", path=str(path), line_number=header_number)

    rows = lines[1:]
    if len(rows) != n:
        line_number = rows[n][0] if len(rows) > n else None
        raise ParseError(f"Expected {n} matrix rows, found {len(rows)}", path=str(path), line_number=line_number)

    matrix = np.empty((n, n))
    for index, (line_number, tokens) in enumerate(rows):
        if len(tokens) != n:
            raise ParseError(f"Expected {n} values, found {len(tokens)}", path=str(path), line_number=line_number)
        matrix[index] = _parse_floats(tokens, path, line_number)
    return matrix


def read_gossip_matrix(path: PathLike, edges_path: Optional[PathLike] = None) -> GossipMatrix:
    """Load and validate a gossip matrix.

    Args:
        path: Matrix file in the write_matrix format
        edges_path: Optional edge list; without it the support is taken from
            the positive off-diagonal weights

    Returns:
        GossipMatrix: Validated symmetric doubly-stochastic matrix

    Raises:
        StorageError: Unreadable file
        ParseError: Malformed matrix or edge lines
        InvalidGraphError: Weights that are not symmetric, doubly stochastic
            and supported on the edges
        ShapeError: A non-square matrix
    """
    weights = read_matrix(path)
    edge_set = read_edges(edges_path) if edges_path is not None else None
    W = GossipMatrix.from_weights(weights, edge_set=edge_set)
    logger.info(f"Loaded gossip matrix n={W.n} from {path}")
    return W


def write_edges(path: PathLike, edges: Iterable[Edge]) -> Path:
    body = "".join(f"{i} {j}\n" for i, j in sorted(edges))
    return _write_text(path, body)


def read_edges(path: PathLike) -> List[Edge]:
    """Read `i j` lines (0-indexed); blank lines and `#` comments are skipped."""
    edges: List[Edge] = []
    for line_number, line in enumerate(_read_lines(path), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        tokens = stripped.split()
        if len(tokens) != 2:
            raise ParseError("Edge lines must have exactly two indices", path=str(path), line_number=line_number)
        i = _parse_int(tokens[0], path, line_number, "agent index")
        j = _parse_int(tokens[1], path, line_number, "agent index")
        if i < 0 or j < 0:
            raise ParseError(f"Negative agent index in {stripped!r}", path=str(path), line_number=line_number)
        edges.append((i, j))
    return edges


def write_snapshot(path: PathLike, header: Dict[str, str], matrices: Dict[str, np.ndarray]) -> Path:
    """Write a sectioned snapshot.

    Layout: a magic line, `key value` header lines, then per matrix a
    `matrix NAME ROWS COLS` line followed by its rows.
    """
    lines = [SNAPSHOT_MAGIC]
    for key, value in header.items():
        lines.append(f"{key} {value}")
    for name, matrix in matrices.items():
        matrix = np.atleast_2d(np.asarray(matrix, dtype=np.float64))
        rows, cols = matrix.shape
        lines.append(f"matrix {name} {rows} {cols}")
        lines.extend(" ".join(format_float(v) for v in row) for row in matrix)
    target = _write_text(path, "\n".join(lines) + "\n")
    logger.info(f"Snapshot with {len(matrices)} matrices written to {target}")
    return target


def read_snapshot(path: PathLike) -> Tuple[Dict[str, str], Dict[str, np.ndarray]]:
    """Inverse of write_snapshot: (header values, matrices by name)."""
    lines = _read_lines(path)
    if not lines or lines[0].strip() != SNAPSHOT_MAGIC:
        raise ParseError("Missing snapshot header line", path=str(path), line_number=1)

    header: Dict[str, str] = {}
    matrices: Dict[str, np.ndarray] = {}
    index = 1
    while index < len(lines):
        line_number = index + 1
        tokens = lines[index].split()
        index += 1
        if not tokens:
            continue
        if tokens[0] != "matrix":
            if matrices:
                raise ParseError("Header entry after matrix sections", path=str(path), line_number=line_number)
            header[tokens[0]] = " ".join(tokens[1:])
            continue

        if len(tokens) != 4:
            raise ParseError("Section line must read `matrix NAME ROWS COLS`", path=str(path),
                             line_number=line_number)
        name = tokens[1]
        rows = _parse_int(tokens[2], path, line_number, "row count")
        cols = _parse_int(tokens[3], path, line_number, "column count")
        if index + rows > len(lines):
            raise ParseError(f"Section {name} is truncated", path=str(path), line_number=line_number)
        data = np.empty((rows, cols))
        for r in range(rows):
            row_number = index + 1
            row_tokens = lines[index].split()
            index += 1
            if len(row_tokens) != cols:
                raise ParseError(f"Expected {cols} values in section {name}", path=str(path),
                                 line_number=row_number)
            data[r] = _parse_floats(row_tokens, path, row_number)
        matrices[name] = data
    return header, matrices
