"""
LLRV Transform Module
=====================
Log-likelihood-vector algebra for nonbinary trellis decoding.

An LLRV holds log p(theta) for every symbol theta in GF(q), normalized so
that its largest entry is 0. All functions operate on the last axis, so a
stack of vectors with shape (..., q) is processed in one call.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Union

import numpy as np

from config.settings import settings
from modules.errors import (
    FieldParameterError,
    LlrvDomainError,
    LlrvShapeError,
    PermutationError,
    validate_field_element,
)
from modules.gf.field import GfContext

logger = logging.getLogger(__name__)

SymbolLike = Union[int, np.ndarray]


@dataclass(frozen=True)
class KernelCoeffs:
    """Lower-triangular kernel [[1, 0], [alpha, beta]] over GF(q)."""
    alpha: int
    beta: int

    def validate(self, ctx: GfContext) -> "KernelCoeffs":
        """Check both coefficients are nonzero field elements."""
        for name, value in (("alpha", self.alpha), ("beta", self.beta)):
            if validate_field_element(value, ctx.q, name) == 0:
                raise FieldParameterError(
                    f"Kernel coefficient {name}={value} is invalid for GF({ctx.q})",
                    "must be nonzero"
                )
        return self

    def f_ratio(self, ctx: GfContext) -> int:
        """beta * alpha^-1, the index scale that aligns the F-node convolution."""
        return int(ctx.mul_table[self.beta, ctx.inv_table[self.alpha]])


def check_llrv(values: np.ndarray, q: int) -> np.ndarray:
    """Ensure the last axis has length q."""
    values = np.asarray(values, dtype=np.float64)
    if values.ndim == 0 or values.shape[-1] != q:
        raise LlrvShapeError(
            f"Expected LLRVs of length {q}",
            f"got shape {values.shape}"
        )
    return values


def normalize(v: np.ndarray, clamp: float = None) -> np.ndarray:
    """
    Shift each vector so its max is 0 and clamp the tail at -clamp.

    Raises:
        LlrvDomainError: If a vector has no finite entry
    """
    clamp = settings.clamp if clamp is None else clamp
    v = np.asarray(v, dtype=np.float64)
    peak = v.max(axis=-1, keepdims=True)
    if not np.all(np.isfinite(peak)):
        raise LlrvDomainError()
    return np.maximum(v - peak, -clamp)


def wht(v: np.ndarray) -> np.ndarray:
    """
    Unnormalized fast Walsh-Hadamard transform over the last axis.

    wht(wht(v)) == q * v.
    """
    v = np.asarray(v, dtype=np.float64)
    q = v.shape[-1]
    if q < 1 or q & (q - 1):
        raise LlrvShapeError(f"Hadamard length {q} is not a power of two")
    shape = v.shape
    h = 1
    while h < q:
        x = v.reshape(*shape[:-1], q // (2 * h), 2, h)
        a = x[..., 0, :]
        b = x[..., 1, :]
        v = np.stack((a + b, a - b), axis=-2).reshape(shape)
        h *= 2
    return v


def affine_permute(L: np.ndarray, g: int, offset: SymbolLike, ctx: GfContext) -> np.ndarray:
    """
    Relabel symbol indices: out[t] = L[g*t + offset].

    Args:
        L: LLRVs with shape (..., q)
        g: Nonzero multiplier
        offset: Scalar, or an integer array broadcastable to L.shape[:-1]
        ctx: Field context

    Raises:
        PermutationError: If g is zero
    """
    if int(g) % ctx.q == 0:
        raise PermutationError(int(g))
    scaled = ctx.mul_table[g]
    offset = np.asarray(offset)
    if offset.ndim == 0:
        return L[..., scaled ^ int(offset)]
    shape = np.broadcast_shapes(L.shape[:-1], offset.shape) + (ctx.q,)
    index = np.broadcast_to(scaled ^ offset[..., None], shape)
    return np.take_along_axis(np.broadcast_to(L, shape), index, axis=-1)


@lru_cache(maxsize=None)
def _xor_index(q: int) -> np.ndarray:
    symbols = np.arange(q)
    return symbols[:, None] ^ symbols[None, :]


# Elements gathered per chunk by xor_convolve_direct
_DIRECT_CHUNK = 1 << 22

# Relative round-off budget of the Hadamard path, in units of q * eps
_HADAMARD_MARGIN = 1e10


def xor_convolve_direct(p1: np.ndarray, p2: np.ndarray) -> np.ndarray:
    """
    out[v, t] = sum_x p1[v, t ^ x] * p2[v, x] for rows of shape (V, q).

    A sum of nonnegative terms, so every entry keeps full relative
    precision however small it is.
    """
    q = p1.shape[-1]
    index = _xor_index(q)
    out = np.empty(p1.shape, dtype=np.float64)
    step = max(1, _DIRECT_CHUNK // (q * q))
    for start in range(0, len(p1), step):
        gathered = p1[start:start + step][:, index]
        out[start:start + step] = np.matmul(gathered, p2[start:start + step, :, None])[..., 0]
    return out


def xor_convolve(p1: np.ndarray, p2: np.ndarray) -> np.ndarray:
    """
    XOR convolution of probability rows, shape (V, q).

    Rows go through the Hadamard domain when its round-off (about
    q * eps * sum(p1) * sum(p2)) stays far below their smallest output;
    the remaining rows are summed directly.
    """
    q = p1.shape[-1]
    conv = wht(wht(p1) * wht(p2)) / q
    tolerance = _HADAMARD_MARGIN * q * np.finfo(np.float64).eps
    loose = conv.min(axis=-1) < tolerance * p1.sum(axis=-1) * p2.sum(axis=-1)
    if np.any(loose):
        conv[loose] = xor_convolve_direct(p1[loose], p2[loose])
        logger.debug(f"XOR convolution: {int(loose.sum())}/{len(conv)} rows summed directly")
    return conv


def f_node(L1: np.ndarray, L2: np.ndarray, kernel: KernelCoeffs, ctx: GfContext,
           floor: float = None, clamp: float = None) -> np.ndarray:
    """
    Check-node update: p(u0) = sum_u1 p1(u0 + alpha*u1) * p2(beta*u1).

    Substituting x = alpha*u1 turns the sum into an XOR convolution of p1
    with p2 relabeled by beta/alpha. Well-conditioned rows use the Hadamard
    domain; rows with a wide dynamic range are summed exactly.
    """
    floor = settings.prob_floor if floor is None else floor
    p1, p2 = np.broadcast_arrays(
        np.exp(np.asarray(L1, dtype=np.float64)),
        np.exp(affine_permute(np.asarray(L2, dtype=np.float64), kernel.f_ratio(ctx), 0, ctx)),
    )
    shape = p1.shape
    conv = xor_convolve(p1.reshape(-1, ctx.q), p2.reshape(-1, ctx.q)).reshape(shape)
    return normalize(np.log(np.maximum(conv, floor)), clamp)


def g_node(L1: np.ndarray, L2: np.ndarray, mu: SymbolLike, kernel: KernelCoeffs,
           ctx: GfContext, clamp: float = None) -> np.ndarray:
    """Variable-node update: p(u1) = p1(mu + alpha*u1) * p2(beta*u1)."""
    left = affine_permute(L1, kernel.alpha, mu, ctx)
    right = affine_permute(L2, kernel.beta, 0, ctx)
    return normalize(left + right, clamp)


def node_oracle(L1: np.ndarray, L2: np.ndarray, mu: Optional[int], kernel: KernelCoeffs,
                ctx: GfContext, floor: float = None, clamp: float = None) -> np.ndarray:
    """
    Direct probability-domain evaluation of a single F (mu=None) or G node.

    Used as the reference for f_node and g_node.
    """
    floor = settings.prob_floor if floor is None else floor
    q = ctx.q
    p1 = np.exp(np.asarray(L1, dtype=np.float64))
    p2 = np.exp(np.asarray(L2, dtype=np.float64))
    symbols = np.arange(q)
    mul = ctx.mul_table

    if mu is None:
        out = np.zeros(q)
        for u1 in range(q):
            out += p1[symbols ^ mul[kernel.alpha, u1]] * p2[mul[kernel.beta, u1]]
        return normalize(np.log(np.maximum(out, floor)), clamp)

    out = p1[int(mu) ^ mul[kernel.alpha, symbols]] * p2[mul[kernel.beta, symbols]]
    return normalize(np.log(np.maximum(out, np.finfo(np.float64).tiny)), clamp)


def binary_boxplus(l1: float, l2: float) -> float:
    """Exact binary check-node combine of two scalar LLRs log(p0/p1)."""
    return 2.0 * np.arctanh(np.tanh(l1 / 2.0) * np.tanh(l2 / 2.0))


def hard_decision(L: np.ndarray) -> np.ndarray:
    """Most likely symbol per vector (lowest index on ties)."""
    return np.argmax(L, axis=-1)
