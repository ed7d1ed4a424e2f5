"""
Shared fixtures
"""

import os

import pytest

from ogt_sim.config.settings import set_default_settings


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch, tmp_path):
    """Isolate every test from OGT_* variables and cached settings."""
    for name in list(os.environ):
        if name.startswith("OGT_"):
            monkeypatch.delenv(name, raising=False)
    monkeypatch.setenv("OGT_OUTPUT_DIR", str(tmp_path / "results"))
    set_default_settings(None)
    yield
    set_default_settings(None)
