"""
Shared-seed Bernoulli streams.
Every agent reproduces the same (ξ, ζ) sequence locally from a common seed.
"""

import logging
from enum import Enum
from typing import Tuple

from .exceptions import ConfigurationError

logger = logging.getLogger(__name__)

MASK64 = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15
MIX1 = 0xBF58476D1CE4E5B9
MIX2 = 0x94D049BB133111EB
UNIFORM_SCALE = 1.0 / (1 << 53)

FINGERPRINT_SEED = 42
FINGERPRINT_DRAWS = 64


class StreamMode(str, Enum):
    """How ξ and ζ are drawn."""
    COUPLED = "coupled"
    INDEPENDENT = "independent"


class SplitMix64:
    """SplitMix64 generator on Python integers (platform independent)."""

    def __init__(self, seed: int):
        self._state = int(seed) & MASK64

    def next_uint64(self) -> int:
        self._state = (self._state + GAMMA) & MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * MIX1) & MASK64
        z = ((z ^ (z >> 27)) * MIX2) & MASK64
        return z ^ (z >> 31)

    def next_uniform(self) -> float:
        """Uniform in [0, 1) from the top 53 bits."""
        return (self.next_uint64() >> 11) * UNIFORM_SCALE


class CoupledBernoulliStream:
    """Deterministic source of (ξᵏ, ζᵏ)

    ξ ~ Bernoulli(p) and ζ ~ Bernoulli(q)/q. In coupled mode a single uniform
    drives both draws, so ζ = ξ/q whenever p = q.
    """

    def __init__(self, seed: int, p: float, q: float, mode: StreamMode = StreamMode.COUPLED):
        """Initialize the stream at k = 0.

        Args:
            seed: Shared 64-bit seed
            p: Snapshot refresh probability in (0, 1]
            q: Gradient-correction probability in (0, 1]
            mode: Coupled (default) or independent draws

        Raises:
            ConfigurationError: For probabilities outside (0, 1] or coupled p != q
        """
        mode = StreamMode(mode)
        for name, value in (("p", p), ("q", q)):
            if not (0.0 < value <= 1.0):
                raise ConfigurationError(f"Probability {name} must lie in (0, 1], got {value}")
        if mode is StreamMode.COUPLED and p != q:
            raise ConfigurationError(f"Coupled mode requires p == q, got p={p}, q={q}")

        self.seed = int(seed)
        self.p = float(p)
        self.q = float(q)
        self.mode = mode
        self.k = 0
        self._zeta_value = 1.0 / self.q
        self._generator = SplitMix64(self.seed)

    def next(self) -> Tuple[int, float]:
        """Advance one iteration and return (ξ, ζ)."""
        u = self._generator.next_uniform()
        if self.mode is StreamMode.COUPLED:
            v = u
        else:
            v = self._generator.next_uniform()
        self.k += 1
        xi = 1 if u < self.p else 0
        zeta = self._zeta_value if v < self.q else 0.0
        return xi, zeta

    def __iter__(self):
        return self

    def __next__(self) -> Tuple[int, float]:
        return self.next()

    def __repr__(self) -> str:
        return (f"CoupledBernoulliStream(seed={self.seed}, p={self.p}, q={self.q}, "
                f"mode={self.mode.value}, k={self.k})")


def restart(seed: int, p: float, q: float, mode: StreamMode = StreamMode.COUPLED) -> CoupledBernoulliStream:
    """Fresh stream at k = 0."""
    stream = CoupledBernoulliStream(seed, p, q, mode)
    logger.debug(f"Restarted {stream!r}")
    return stream


def expected_gradient_fraction(p: float, q: float, mode: StreamMode = StreamMode.COUPLED) -> float:
    """Probability that an iteration evaluates ∇F(Xᵏ), i.e. P(ξ = 1 or ζ ≠ 0).

    Coupled draws share one uniform with p = q, so the two events coincide.
    Independent draws give the union p + (1 - p)q.

    Raises:
        ConfigurationError: For coupled mode with p != q
    """
    if StreamMode(mode) is StreamMode.COUPLED:
        if p != q:
            raise ConfigurationError(f"Coupled mode requires p == q, got p={p}, q={q}")
        return p
    return p + (1.0 - p) * q


def rng_fingerprint(seed: int = FINGERPRINT_SEED, draws: int = FINGERPRINT_DRAWS) -> str:
    """Hex XOR of the first raw generator outputs."""
    generator = SplitMix64(seed)
    value = 0
    for _ in range(draws):
        value ^= generator.next_uint64()
    return f"{value:016x}"
