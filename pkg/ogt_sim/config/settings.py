"""
Settings management.
Environment-driven defaults for runs, output and logging.
"""

import logging
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Optional

from dotenv import load_dotenv

load_dotenv()

logger = logging.getLogger(__name__)


class LogConfig:
    """Logging configuration."""
    LEVEL: str = "INFO"
    FORMAT: str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


@dataclass
class SimulatorSettings:
    """Process-wide simulator settings

    Environment overrides (also read from .env):
        OGT_OUTPUT_DIR: output_dir
        OGT_LOG_LEVEL: log_level, upper-cased; unknown levels fall back to INFO
        OGT_SEED: seed_override, replaces RunConfig.seed; negative values are ignored
        OGT_RECORD_LIMIT: record_limit, the cap on stored records per run

    Malformed values are logged as warnings and the default is kept.
    """

    # output
    output_dir: str = "results"
    record_limit: int = 2000

    # logging
    log_level: str = "INFO"

    # OGT_SEED overrides RunConfig.seed when set
    seed_override: Optional[int] = None

    # reference solver
    reference_tol: float = 1e-13
    reference_max_iter: int = 1_000_000

    # diagnostics
    diagnostic_tolerance: float = 1e-8

    def __post_init__(self):
        self._load_from_environment()
        self._validate_config()

    def _load_from_environment(self):
        if output_dir_env := os.getenv("OGT_OUTPUT_DIR"):
            self.output_dir = output_dir_env

        if log_level_env := os.getenv("OGT_LOG_LEVEL"):
            self.log_level = log_level_env.upper()

        if seed_env := os.getenv("OGT_SEED"):
            try:
                self.seed_override = int(seed_env)
            except ValueError:
                logger.warning(f"Invalid OGT_SEED value: {seed_env}")

        if record_limit_env := os.getenv("OGT_RECORD_LIMIT"):
            try:
                self.record_limit = int(record_limit_env)
            except ValueError:
                logger.warning(f"Invalid OGT_RECORD_LIMIT value: {record_limit_env}")

    def _validate_config(self):
        valid_log_levels = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]
        if self.log_level not in valid_log_levels:
            logger.warning(f"Invalid log_level: {self.log_level}, using INFO")
            self.log_level = "INFO"

        if self.record_limit <= 0:
            logger.warning("Invalid record_limit value, using default 2000")
            self.record_limit = 2000

        if self.seed_override is not None and self.seed_override < 0:
            logger.warning(f"Negative OGT_SEED {self.seed_override} ignored")
            self.seed_override = None

        if self.reference_tol <= 0:
            logger.warning("Invalid reference_tol value, using default 1e-13")
            self.reference_tol = 1e-13

    def get_output_path(self) -> Path:
        return Path(self.output_dir)

    def record_every(self, max_iters: int) -> int:
        """Stride keeping at most about record_limit records (max_iters 20000 gives 10)."""
        return max(1, max_iters // self.record_limit)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "output_dir": self.output_dir,
            "record_limit": self.record_limit,
            "log_level": self.log_level,
            "seed_override": self.seed_override,
            "reference_tol": self.reference_tol,
            "reference_max_iter": self.reference_max_iter,
            "diagnostic_tolerance": self.diagnostic_tolerance,
        }


_default_settings: Optional[SimulatorSettings] = None


def get_default_settings() -> SimulatorSettings:
    """Return the process-wide settings, creating them on first use."""
    global _default_settings

    if _default_settings is None:
        _default_settings = SimulatorSettings()

    return _default_settings


def set_default_settings(settings: Optional[SimulatorSettings]):
    """Replace the process-wide settings (None forces a reload)."""
    global _default_settings
    _default_settings = settings
    logger.info("Default settings updated")
