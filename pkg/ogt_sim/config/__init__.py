"""
Configuration package.
"""

from .settings import LogConfig, SimulatorSettings, get_default_settings, set_default_settings

__all__ = ["LogConfig", "SimulatorSettings", "get_default_settings", "set_default_settings"]
