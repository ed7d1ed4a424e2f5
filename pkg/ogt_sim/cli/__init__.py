"""
Command-line interface
"""

from .main import cli, main
from .plot import plot, render_svg

__all__ = ['cli', 'main', 'plot', 'render_svg']
