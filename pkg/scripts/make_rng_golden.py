#!/usr/bin/env python3
"""
Regenerate tests/data/rng_golden_seed42.txt
Writes the first 64 SplitMix64 draws for seed 42 and the fingerprint
"""
import logging
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from ogt_sim.rng import CoupledBernoulliStream, SplitMix64, rng_fingerprint  # noqa: E402

logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

SEED = 42
PROBABILITY = 0.1
DRAWS = 64
GOLDEN_PATH = Path(__file__).resolve().parent.parent / "tests" / "data" / "rng_golden_seed42.txt"


def make_rng_golden(path: Path = GOLDEN_PATH):
    """Write the golden draw table."""
    raw = SplitMix64(SEED)
    stream = CoupledBernoulliStream(SEED, PROBABILITY, PROBABILITY)
    lines = [
        f"# SplitMix64 draws: seed {SEED}, p = q = {PROBABILITY}, coupled mode",
        "# columns: k raw_uint64_hex xi zeta",
    ]
    for k in range(DRAWS):
        xi, zeta = stream.next()
        lines.append(f"{k} {raw.next_uint64():016x} {xi} {zeta:g}")
    lines.append(f"fingerprint {rng_fingerprint(SEED, DRAWS)}")
    path.write_text("\n".join(lines) + "\n")
    logger.info(f"Wrote {DRAWS} draws to {path}")


if __name__ == "__main__":
    make_rng_golden()
