"""
Plain-text storage tests
"""

import numpy as np
import pytest

from ogt_sim.exceptions import InvalidGraphError, ParseError, StorageError
from ogt_sim.graph.gossip import build_metropolis_lazy, build_ring
from ogt_sim.utils.storage import (
    format_float,
    read_edges,
    read_gossip_matrix,
    read_matrix,
    read_snapshot,
    write_edges,
    write_matrix,
    write_snapshot,
)


class TestMatrixFiles:
    def test_exact_round_trip(self, tmp_path):
        W = build_metropolis_lazy(7, [(i, (i + 1) % 7) for i in range(7)] + [(0, 3)])
        path = write_matrix(tmp_path / "w.txt", W.weights)
        assert np.array_equal(read_matrix(path), W.weights)

    def test_gossip_matrix_with_edges(self, tmp_path):
        W = build_ring(5)
        write_matrix(tmp_path / "w.txt", W.weights)
        write_edges(tmp_path / "e.txt", W.edge_set)
        loaded = read_gossip_matrix(tmp_path / "w.txt", tmp_path / "e.txt")
        assert loaded.edge_set == W.edge_set
        assert loaded.psd

    def test_row_count_mismatch(self, tmp_path):
        path = tmp_path / "w.txt"
        path.write_text("2\n0.5 0.5\n")
        with pytest.raises(ParseError):
            read_matrix(path)

    def test_bad_value_reports_line(self, tmp_path):
        path = tmp_path / "w.txt"
        path.write_text("2\n0.5 0.5\n0.5 half\n")
        with pytest.raises(ParseError) as excinfo:
            read_matrix(path)
        assert excinfo.value.line_number == 3

    def test_invalid_weights(self, tmp_path):
        path = tmp_path / "w.txt"
        path.write_text("2\n0.6 0.5\n0.5 0.5\n")
        with pytest.raises(InvalidGraphError):
            read_gossip_matrix(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(StorageError):
            read_matrix(tmp_path / "missing.txt")


class TestEdgeFiles:
    def test_comments_skipped(self, tmp_path):
        path = tmp_path / "e.txt"
        path.write_text("# ring\n0 1\n\n1 2\n")
        assert read_edges(path) == [(0, 1), (1, 2)]

    def test_malformed(self, tmp_path):
        path = tmp_path / "e.txt"
        path.write_text("0 1 2\n")
        with pytest.raises(ParseError):
            read_edges(path)


class TestSnapshots:
    def test_round_trip(self, tmp_path):
        matrices = {"X": np.array([[0.1, 1e-300], [np.pi, -2.5]]), "G": np.zeros((1, 3))}
        path = write_snapshot(tmp_path / "s.snap", {"algorithm": "ssgt", "k": "3"}, matrices)
        header, loaded = read_snapshot(path)
        assert header == {"algorithm": "ssgt", "k": "3"}
        assert np.array_equal(loaded["X"], matrices["X"])
        assert loaded["G"].shape == (1, 3)

    def test_missing_magic(self, tmp_path):
        path = tmp_path / "s.snap"
        path.write_text("algorithm gt\n")
        with pytest.raises(ParseError):
            read_snapshot(path)

    def test_truncated_section(self, tmp_path):
        path = tmp_path / "s.snap"
        path.write_text("# ogt-sim snapshot\nmatrix X 3 1\n1\n2\n")
        with pytest.raises(ParseError):
            read_snapshot(path)


def test_format_float_is_exact():
    value = 0.1 + 0.2
    assert float(format_float(value)) == value
