"""
Settings tests
"""

import os
from pathlib import Path
from unittest.mock import patch

from ogt_sim.config.settings import LogConfig, SimulatorSettings, get_default_settings, set_default_settings


class TestSimulatorSettings:
    """SimulatorSettings environment handling"""

    def test_defaults(self):
        with patch.dict(os.environ, {}, clear=True):
            settings = SimulatorSettings()
        assert settings.output_dir == "results"
        assert settings.record_limit == 2000
        assert settings.log_level == "INFO"
        assert settings.seed_override is None
        assert settings.reference_tol == 1e-13

    def test_environment_overrides(self):
        env = {"OGT_OUTPUT_DIR": "/tmp/out", "OGT_LOG_LEVEL": "debug", "OGT_SEED": "17", "OGT_RECORD_LIMIT": "50"}
        with patch.dict(os.environ, env, clear=True):
            settings = SimulatorSettings()
        assert settings.get_output_path() == Path("/tmp/out")
        assert settings.log_level == "DEBUG"
        assert settings.seed_override == 17
        assert settings.record_limit == 50

    def test_invalid_values_fall_back(self):
        env = {"OGT_LOG_LEVEL": "LOUD", "OGT_SEED": "abc", "OGT_RECORD_LIMIT": "0"}
        with patch.dict(os.environ, env, clear=True):
            settings = SimulatorSettings()
        assert settings.log_level == "INFO"
        assert settings.seed_override is None
        assert settings.record_limit == 2000

    def test_negative_seed_ignored(self):
        with patch.dict(os.environ, {"OGT_SEED": "-3"}, clear=True):
            assert SimulatorSettings().seed_override is None

    def test_record_every(self):
        with patch.dict(os.environ, {}, clear=True):
            settings = SimulatorSettings(record_limit=100)
        assert settings.record_every(50) == 1
        assert settings.record_every(1000) == 10

    def test_to_dict(self):
        with patch.dict(os.environ, {}, clear=True):
            data = SimulatorSettings().to_dict()
        assert data["diagnostic_tolerance"] == 1e-8
        assert set(data) >= {"output_dir", "record_limit", "seed_override"}


class TestDefaultSettings:
    def test_cached_until_reset(self):
        first = get_default_settings()
        assert get_default_settings() is first
        set_default_settings(None)
        assert get_default_settings() is not first

    def test_replace(self):
        with patch.dict(os.environ, {}, clear=True):
            custom = SimulatorSettings(record_limit=7)
        set_default_settings(custom)
        assert get_default_settings().record_limit == 7


def test_log_format_names_logger():
    assert "%(name)s" in LogConfig.FORMAT
