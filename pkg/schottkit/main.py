"""
Entry point for the `schottkit` CLI.
"""

from schottkit.cli import app

__all__ = ["app"]
