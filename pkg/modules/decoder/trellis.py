"""
Decoding Trellis
================
Batched successive-cancellation trellis over GF(q).

Layer lambda holds LLRVs of shape (B, 2^lambda, q); layer n is the channel.
Computing layer lambda from layer lambda+1 uses bit lambda of the symbol
index: F when the bit is 0, G (with the left sibling's partial sum) when it
is 1. Only layers below the highest bit that changed since the previous
symbol are recomputed.

The batch axis holds either survivor paths of one frame (list decoding,
channel shared with batch 1) or independent frames (genie-aided
construction, channel of batch B).
"""

from typing import Optional

import numpy as np

from modules.errors import DecodeOrderError, LlrvShapeError
from modules.gf.field import GfContext
from modules.llrv.quantize import Quantizer
from modules.llrv.transform import KernelCoeffs, check_llrv, f_node, g_node


class Trellis:
    """
    Partial-sum and LLRV cache for a batch of decoding paths.

    Attributes:
        N: Block length
        n: log2(N)
        batch: Current number of paths
        next_index: Next symbol to be decided
        decisions: Decided symbols, shape (batch, N)
    """

    def __init__(self, channel: np.ndarray, kernel: KernelCoeffs, ctx: GfContext,
                 quantizer: Optional[Quantizer] = None):
        channel = check_llrv(channel, ctx.q)
        if channel.ndim == 2:
            channel = channel[None]
        N = channel.shape[1]
        if N < 2 or N & (N - 1):
            raise LlrvShapeError(f"Trellis length {N} is not a power of two >= 2")

        self.kernel = kernel
        self.ctx = ctx
        self.quantizer = quantizer
        self.N = N
        self.n = N.bit_length() - 1
        self.batch = channel.shape[0]
        self.next_index = 0

        if quantizer is not None:
            channel = quantizer.quantize_llrv(channel)
        self._llrv = [None] * self.n + [channel]
        self._sums = [np.zeros((self.batch, 1 << lam, 2), dtype=np.int64) for lam in range(self.n + 1)]
        self.decisions = np.zeros((self.batch, N), dtype=np.int64)

    # ==================== Evaluation ====================

    def _node(self, lam: int, use_g: bool) -> None:
        src = self._llrv[lam + 1]
        half = 1 << lam
        left = src[:, :half]
        right = src[:, half:]
        if use_g:
            out = g_node(left, right, self._sums[lam][:, :, 0], self.kernel, self.ctx)
        else:
            out = f_node(left, right, self.kernel, self.ctx)
        if self.quantizer is not None:
            out = self.quantizer.quantize_llrv(out)
        self._llrv[lam] = out

    def llrv(self, i: int) -> np.ndarray:
        """
        LLRV of symbol i for every path, shape (batch, q).

        Raises:
            DecodeOrderError: If symbols before i are not all decided
        """
        if i != self.next_index:
            raise DecodeOrderError(self.next_index, i)
        if i == 0:
            top = self.n - 1
        else:
            top = ((i - 1) ^ i).bit_length() - 1
            self._node(top, use_g=True)
            top -= 1
        for lam in range(top, -1, -1):
            self._node(lam, use_g=False)
        return np.broadcast_to(self._llrv[0][:, 0, :], (self.batch, self.ctx.q))

    # ==================== Decisions ====================

    def commit(self, symbols: np.ndarray) -> None:
        """Record the decision for symbol next_index and propagate partial sums."""
        i = self.next_index
        symbols = np.broadcast_to(np.asarray(symbols, dtype=np.int64), (self.batch,))
        self.decisions[:, i] = symbols
        self._sums[0][:, 0, i & 1] = symbols

        alpha_row = self.ctx.mul_table[self.kernel.alpha]
        beta_row = self.ctx.mul_table[self.kernel.beta]
        lam = 0
        while lam < self.n and (i >> lam) & 1:
            left = self._sums[lam][:, :, 0]
            right = self._sums[lam][:, :, 1]
            combined = np.concatenate((left ^ alpha_row[right], beta_row[right]), axis=1)
            self._sums[lam + 1][:, :, (i >> (lam + 1)) & 1] = combined
            lam += 1
        self.next_index += 1

    def select(self, parents: np.ndarray) -> None:
        """Copy-on-select: rebuild the batch from the given parent rows."""
        parents = np.asarray(parents, dtype=np.int64)
        for lam in range(self.n):
            if self._llrv[lam] is not None:
                self._llrv[lam] = self._llrv[lam][parents]
        if self._llrv[self.n].shape[0] > 1:
            self._llrv[self.n] = self._llrv[self.n][parents]
        self._sums = [s[parents] for s in self._sums]
        self.decisions = self.decisions[parents]
        self.batch = len(parents)

    def partial_sums(self, lam: int) -> np.ndarray:
        """Stored partial sums at layer lam, shape (batch, 2^lam, 2)."""
        return self._sums[lam]

    @property
    def codeword(self) -> np.ndarray:
        """Re-encoded decisions once all N symbols are committed."""
        return self._sums[self.n][:, :, 0]
