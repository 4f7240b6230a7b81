"""
Galois Field Arithmetic
=======================
Table-driven arithmetic over GF(2^r) for 1 <= r <= 8.

Elements are plain integers in [0, q). A GfContext carries the log/antilog
tables plus a dense multiplication table so that vectorized numpy indexing
(`ctx.mul_table[a, b]`) works on whole arrays of symbols.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Union

import numpy as np

from config.fields import get_preset
from modules.errors import (
    FieldDomainError,
    FieldParameterError,
    ReducibleFieldPolynomialError,
)

logger = logging.getLogger(__name__)

MAX_DEGREE = 8

ArrayLike = Union[int, np.ndarray]


@dataclass(frozen=True, eq=False)
class GfContext:
    """
    Immutable GF(2^r) context.

    Attributes:
        r: Field degree (bits per symbol)
        q: Field order, 2^r
        poly: Reduction polynomial as an (r+1)-bit mask
        generator: Primitive element used to build the tables
        log_table: log_table[x] = k with generator^k = x (entry 0 unused, set to -1)
        antilog_table: antilog_table[k] = generator^k for k in [0, q)
        mul_table: Dense q x q product table
        inv_table: Multiplicative inverses (entry 0 unused, set to 0)
    """
    r: int
    q: int
    poly: int
    generator: int
    log_table: np.ndarray
    antilog_table: np.ndarray
    mul_table: np.ndarray
    inv_table: np.ndarray

    def add(self, a: ArrayLike, b: ArrayLike) -> ArrayLike:
        return gf_add(a, b)

    def mul(self, a: ArrayLike, b: ArrayLike) -> ArrayLike:
        return gf_mul(self, a, b)

    def inv(self, a: ArrayLike) -> ArrayLike:
        return gf_inv(self, a)

    def __repr__(self) -> str:
        return f"GfContext(q={self.q}, poly=0x{self.poly:X})"


# ==================== Polynomial helpers ====================

def carryless_mul(a: int, b: int, poly: int, r: int) -> int:
    """
    Multiply two field elements by shift-and-add, reducing as we go.

    This is the reference product the tables are checked against.
    """
    result = 0
    high = 1 << r
    while b:
        if b & 1:
            result ^= a
        b >>= 1
        a <<= 1
        if a & high:
            a ^= poly
    return result


def _poly_mod(a: int, b: int) -> int:
    """Remainder of a divided by b over GF(2)."""
    db = b.bit_length()
    while a.bit_length() >= db:
        a ^= b << (a.bit_length() - db)
    return a


def find_factor(poly: int) -> Optional[int]:
    """
    Trial-divide poly by every polynomial of degree 1..deg/2.

    Returns:
        The first divisor found, or None when poly is irreducible
    """
    degree = poly.bit_length() - 1
    for divisor in range(2, 1 << (degree // 2 + 1)):
        if _poly_mod(poly, divisor) == 0:
            return divisor
    return None


def _order(element: int, poly: int, r: int) -> int:
    """Multiplicative order of a nonzero element."""
    value = element
    k = 1
    while value != 1:
        value = carryless_mul(value, element, poly, r)
        k += 1
    return k


# ==================== Construction ====================

@lru_cache(maxsize=None)
def build_field(r: int, poly: Optional[int] = None) -> GfContext:
    """
    Build (or fetch from cache) the GF(2^r) context for a reduction polynomial.

    Args:
        r: Field degree, 1 <= r <= 8
        poly: Reduction polynomial mask; defaults to the preset for r

    Returns:
        GfContext with validated tables

    Raises:
        FieldParameterError: Degree out of range or malformed mask
        ReducibleFieldPolynomialError: poly factors over GF(2)
    """
    if not 1 <= r <= MAX_DEGREE:
        raise FieldParameterError(f"Field degree r={r} is not supported", f"1 <= r <= {MAX_DEGREE}")
    if poly is None:
        poly = get_preset(r).poly
    if poly.bit_length() != r + 1:
        raise FieldParameterError(f"Polynomial 0x{poly:X} does not have degree {r}")
    if not poly & 1:
        raise FieldParameterError(f"Polynomial 0x{poly:X} has a zero constant term")

    factor = find_factor(poly)
    if factor is not None:
        raise ReducibleFieldPolynomialError(poly, factor)

    q = 1 << r
    # An irreducible poly need not be primitive, so search for a generator
    generator = next(g for g in range(1, q) if _order(g, poly, r) == q - 1)

    antilog = np.zeros(q, dtype=np.int64)
    log = np.full(q, -1, dtype=np.int64)
    value = 1
    for k in range(q - 1):
        antilog[k] = value
        log[value] = k
        value = carryless_mul(value, generator, poly, r)
    antilog[q - 1] = antilog[0]

    idx = np.arange(q)
    logs = log[idx]
    mul_table = antilog[(logs[:, None] + logs[None, :]) % (q - 1)]
    mul_table[0, :] = 0
    mul_table[:, 0] = 0

    inv_table = np.zeros(q, dtype=np.int64)
    inv_table[1:] = antilog[(-logs[1:]) % (q - 1)]

    for arr in (log, antilog, mul_table, inv_table):
        arr.setflags(write=False)

    logger.debug(f"Built GF({q}) with poly 0x{poly:X}, generator {generator}")
    return GfContext(
        r=r,
        q=q,
        poly=poly,
        generator=generator,
        log_table=log,
        antilog_table=antilog,
        mul_table=mul_table,
        inv_table=inv_table,
    )


def field_for_order(q: int, poly: Optional[int] = None) -> GfContext:
    """Build a field from its order q = 2^r."""
    if q < 2 or q & (q - 1):
        raise FieldParameterError(f"Field order q={q} is not a power of two")
    return build_field(q.bit_length() - 1, poly)


# ==================== Element operations ====================

def gf_add(a: ArrayLike, b: ArrayLike) -> ArrayLike:
    """Field addition is bitwise XOR."""
    return a ^ b


def gf_mul(ctx: GfContext, a: ArrayLike, b: ArrayLike) -> ArrayLike:
    """Table-driven product; accepts scalars or integer arrays."""
    result = ctx.mul_table[a, b]
    return int(result) if np.ndim(result) == 0 else result


def gf_inv(ctx: GfContext, a: ArrayLike) -> ArrayLike:
    """
    Multiplicative inverse.

    Raises:
        FieldDomainError: If any input is zero
    """
    if np.any(np.asarray(a) == 0):
        raise FieldDomainError("Zero has no multiplicative inverse")
    result = ctx.inv_table[a]
    return int(result) if np.ndim(result) == 0 else result
