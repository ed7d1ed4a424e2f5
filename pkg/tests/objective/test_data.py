"""
Banknote loader and synthetic generator tests
"""

import numpy as np
import pytest

from ogt_sim.exceptions import DataError, ParseError, StorageError
from ogt_sim.objective.data import load_banknote, read_banknote_rows, synth_logistic, synth_quadratic


@pytest.fixture
def banknote_file(tmp_path):
    rows = ["variance,skewness,curtosis,entropy,class"]
    rng = np.random.default_rng(0)
    for i in range(12):
        values = rng.standard_normal(4)
        rows.append(",".join(f"{v:.5f}" for v in values) + f",{i % 2}")
    path = tmp_path / "banknote.csv"
    path.write_text("\n".join(rows) + "\n")
    return path


class TestReadBanknote:
    def test_header_skipped_and_labels_mapped(self, banknote_file):
        features, labels = read_banknote_rows(banknote_file)
        assert features.shape == (12, 4)
        assert set(labels) == {-1.0, 1.0}

    def test_no_header(self, tmp_path):
        path = tmp_path / "plain.csv"
        path.write_text("1,2,3,4,0\n5,6,7,8,1\n")
        features, labels = read_banknote_rows(path)
        assert features.tolist() == [[1, 2, 3, 4], [5, 6, 7, 8]]
        assert labels.tolist() == [-1.0, 1.0]

    def test_wrong_column_count(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("1,2,3,4,0\n1,2,3,1\n")
        with pytest.raises(ParseError) as excinfo:
            read_banknote_rows(path)
        assert ":2:" in str(excinfo.value)

    def test_bad_label(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("1,2,3,4,2\n")
        with pytest.raises(ParseError):
            read_banknote_rows(path)

    def test_non_numeric(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("1,2,3,4,0\n1,x,3,4,0\n")
        with pytest.raises(ParseError):
            read_banknote_rows(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(StorageError):
            read_banknote_rows(tmp_path / "missing.csv")


class TestLoadBanknote:
    def test_sampling_is_seeded(self, banknote_file):
        first = load_banknote(banknote_file, 5, seed=3)
        second = load_banknote(banknote_file, 5, seed=3)
        assert first.n == 5
        assert np.array_equal(first.features, second.features)
        assert first.mu == pytest.approx(0.01)

    def test_too_few_rows(self, banknote_file):
        with pytest.raises(DataError):
            load_banknote(banknote_file, 50, seed=0)


class TestSynthetic:
    def test_quadratic_deterministic(self):
        a = synth_quadratic(6, 2, kappa=50.0, seed=1)
        b = synth_quadratic(6, 2, kappa=50.0, seed=1)
        assert np.array_equal(a.A, b.A)
        assert np.array_equal(a.b, b.b)

    def test_quadratic_kappa_one(self):
        suite = synth_quadratic(1, 1, kappa=1.0, seed=0)
        assert suite.kappa == pytest.approx(1.0)

    def test_logistic_labels(self):
        suite = synth_logistic(40, 3, mu=0.01, seed=2)
        assert set(np.unique(suite.labels)) <= {-1.0, 1.0}
        assert suite.mu == 0.01
