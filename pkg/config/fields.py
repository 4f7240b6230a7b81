"""
Field Configuration
===================
Reduction polynomial and kernel presets per field degree.
"""

from dataclasses import dataclass


@dataclass(frozen=True)
class FieldPreset:
    """Field preset configuration."""
    degree: int
    poly: int
    alpha: int
    beta: int
    description: str


# Primitive polynomials for GF(2^r), 1 <= r <= 8
FIELD_PRESETS = {
    1: FieldPreset(degree=1, poly=0x3, alpha=1, beta=1, description="binary baseline"),
    2: FieldPreset(degree=2, poly=0x7, alpha=2, beta=1, description="x^2+x+1"),
    3: FieldPreset(degree=3, poly=0xB, alpha=2, beta=1, description="x^3+x+1"),
    4: FieldPreset(degree=4, poly=0x13, alpha=2, beta=1, description="x^4+x+1"),
    5: FieldPreset(degree=5, poly=0x25, alpha=2, beta=1, description="x^5+x^2+1"),
    6: FieldPreset(degree=6, poly=0x43, alpha=2, beta=1, description="x^6+x+1"),
    7: FieldPreset(degree=7, poly=0x89, alpha=2, beta=1, description="x^7+x^3+1"),
    8: FieldPreset(degree=8, poly=0x11D, alpha=2, beta=1, description="x^8+x^4+x^3+x^2+1"),
}

# Default degree (GF(256))
DEFAULT_DEGREE = 8


def get_preset(degree: int) -> FieldPreset:
    """Get the preset for a field degree, falling back to GF(256)."""
    return FIELD_PRESETS.get(degree, FIELD_PRESETS[DEFAULT_DEGREE])


def list_degrees() -> list[int]:
    """List all supported field degrees."""
    return list(FIELD_PRESETS.keys())
