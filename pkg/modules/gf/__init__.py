"""
Galois Field Module
===================
GF(2^r) contexts and element arithmetic.
"""

from .field import (
    GfContext,
    build_field,
    field_for_order,
    gf_add,
    gf_mul,
    gf_inv,
    carryless_mul,
    find_factor,
)

__all__ = [
    "GfContext",
    "build_field",
    "field_for_order",
    "gf_add",
    "gf_mul",
    "gf_inv",
    "carryless_mul",
    "find_factor",
]
