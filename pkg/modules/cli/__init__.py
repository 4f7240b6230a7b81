"""
CLI module for terminal-first interaction.
"""

from .main import main

__all__ = ["main"]
