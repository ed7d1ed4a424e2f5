"""
Shared-seed Bernoulli stream tests
"""

from pathlib import Path

import pytest

from ogt_sim.exceptions import ConfigurationError
from ogt_sim.rng import (
    CoupledBernoulliStream,
    SplitMix64,
    StreamMode,
    expected_gradient_fraction,
    restart,
    rng_fingerprint,
)

GOLDEN_PATH = Path(__file__).parent / "data" / "rng_golden_seed42.txt"


def _golden_rows():
    rows = []
    fingerprint = None
    for line in GOLDEN_PATH.read_text().splitlines():
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "fingerprint":
            fingerprint = parts[1]
            continue
        rows.append((int(parts[0]), int(parts[1], 16), int(parts[2]), float(parts[3])))
    return rows, fingerprint


class TestSplitMix64:
    """Raw generator"""

    def test_reference_value(self):
        """Seed 1234567 first output"""
        assert SplitMix64(1234567).next_uint64() == 0x599ED017FB08FC85

    def test_golden_raw_outputs(self):
        rows, _ = _golden_rows()
        generator = SplitMix64(42)
        assert len(rows) == 64
        for k, raw, _, _ in rows:
            assert generator.next_uint64() == raw, f"draw {k}"

    def test_uniform_range(self):
        generator = SplitMix64(7)
        values = [generator.next_uniform() for _ in range(1000)]
        assert all(0.0 <= v < 1.0 for v in values)

    def test_seed_masked_to_64_bits(self):
        assert SplitMix64(42 + (1 << 64)).next_uint64() == SplitMix64(42).next_uint64()

    def test_fingerprint(self):
        _, fingerprint = _golden_rows()
        assert rng_fingerprint() == fingerprint == "776e9aedbf70bba1"


class TestCoupledBernoulliStream:
    """(ξ, ζ) draws"""

    def test_golden_draws(self):
        rows, _ = _golden_rows()
        stream = CoupledBernoulliStream(42, 0.1, 0.1)
        for k, _, xi, zeta in rows:
            assert stream.next() == (xi, zeta), f"draw {k}"
        assert stream.k == 64

    def test_golden_has_ten_refreshes(self):
        rows, _ = _golden_rows()
        assert sum(xi for _, _, xi, _ in rows) == 10

    def test_coupled_zeta_tracks_xi(self):
        stream = CoupledBernoulliStream(3, 0.25, 0.25)
        for _ in range(500):
            xi, zeta = stream.next()
            assert zeta == xi / 0.25

    def test_restart_replays(self):
        stream_a = restart(11, 0.3, 0.3)
        stream_b = restart(11, 0.3, 0.3)
        draws_a = [stream_a.next() for _ in range(100)]
        draws_b = [stream_b.next() for _ in range(100)]
        assert draws_a == draws_b

    def test_iterable(self):
        stream = CoupledBernoulliStream(5, 0.5, 0.5)
        draws = [draw for _, draw in zip(range(3), stream)]
        assert len(draws) == 3
        assert stream.k == 3

    def test_p_equal_one_always_refreshes(self):
        stream = CoupledBernoulliStream(9, 1.0, 1.0)
        assert all(stream.next() == (1, 1.0) for _ in range(50))

    @pytest.mark.parametrize("p,q", [(0.0, 0.0), (1.5, 1.5), (-0.1, -0.1)])
    def test_invalid_probability(self, p, q):
        with pytest.raises(ConfigurationError):
            CoupledBernoulliStream(1, p, q)

    def test_coupled_requires_equal_probabilities(self):
        with pytest.raises(ConfigurationError):
            CoupledBernoulliStream(1, 0.1, 0.2, StreamMode.COUPLED)

    def test_independent_mode_uses_two_uniforms(self):
        stream = CoupledBernoulliStream(42, 0.1, 0.2, StreamMode.INDEPENDENT)
        generator = SplitMix64(42)
        for _ in range(50):
            u, v = generator.next_uniform(), generator.next_uniform()
            expected = (1 if u < 0.1 else 0, 5.0 if v < 0.2 else 0.0)
            assert stream.next() == expected

    def test_refresh_frequency(self):
        stream = CoupledBernoulliStream(2024, 0.1, 0.1)
        hits = sum(stream.next()[0] for _ in range(20000))
        assert abs(hits / 20000 - 0.1) < 0.01

    def test_string_mode_accepted(self):
        stream = CoupledBernoulliStream(1, 0.2, 0.3, "independent")
        assert stream.mode is StreamMode.INDEPENDENT


class TestExpectedGradientFraction:
    def test_coupled(self):
        assert expected_gradient_fraction(0.1, 0.1) == pytest.approx(0.1)

    def test_independent(self):
        assert expected_gradient_fraction(0.1, 0.2, StreamMode.INDEPENDENT) == pytest.approx(0.28)

    def test_coupled_rejects_unequal(self):
        with pytest.raises(ConfigurationError):
            expected_gradient_fraction(0.1, 0.2)

    @pytest.mark.parametrize("mode, p, q", [
        (StreamMode.COUPLED, 0.15, 0.15),
        (StreamMode.INDEPENDENT, 0.1, 0.2),
    ])
    def test_matches_stream_frequency(self, mode, p, q):
        stream = CoupledBernoulliStream(7, p, q, mode)
        draws = 20000
        hits = 0
        for _ in range(draws):
            xi, zeta = stream.next()
            hits += 1 if xi == 1 or zeta != 0.0 else 0
        assert abs(hits / draws - expected_gradient_fraction(p, q, mode)) < 0.015
