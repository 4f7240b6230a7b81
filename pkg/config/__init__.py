"""
Configuration Module
====================
Application settings and field presets.
"""

from .settings import Settings, settings
from .fields import FIELD_PRESETS, DEFAULT_DEGREE, FieldPreset, get_preset, list_degrees

__all__ = ["Settings", "settings", "FIELD_PRESETS", "DEFAULT_DEGREE", "FieldPreset", "get_preset", "list_degrees"]
