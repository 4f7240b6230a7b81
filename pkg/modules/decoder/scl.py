"""
Successive-Cancellation List Decoding
=====================================
SC and SCL decoding on the full N-symbol trellis.

Path metrics are accumulated log-probabilities: each decision adds
log p(u_i | y, u_0..u_{i-1}), i.e. the chosen entry of the leaf LLRV after
log-sum-exp normalization. In quantized mode the increment is the
max-normalized fixed-point entry and metrics are renormalized and
saturated after every step.
"""

import logging
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from modules.code.spec import CodeSpec
from modules.decoder.trellis import Trellis
from modules.errors import EmptyPathListError
from modules.llrv.quantize import Quantizer

logger = logging.getLogger(__name__)


@dataclass
class Candidates:
    """Extended paths kept after one selection step."""
    parents: np.ndarray
    symbols: np.ndarray
    pm: np.ndarray


@dataclass
class ListDecodeResult:
    """Outcome of a list decode, survivors ordered best first."""
    message: np.ndarray
    u: np.ndarray
    pm: np.ndarray
    paths: np.ndarray
    stats: dict = field(default_factory=dict)

    @property
    def best_pm(self) -> float:
        return float(self.pm[0])


def path_increments(leaf: np.ndarray, quantizer: Optional[Quantizer] = None) -> np.ndarray:
    """
    Per-symbol metric increments for leaf LLRVs of shape (P, q).

    increment[p, x] = leaf[p, x] - logsumexp(leaf[p]), the log posterior of
    symbol x given the channel and the path's earlier decisions. Path
    metrics are sums of these log posteriors, not of the raw max-normalized
    leaf entries. Every increment is <= 0, so metrics only decrease and the
    best path has the highest metric. With a quantizer the increments come from
    Quantizer.quantize_increment instead.
    """
    if quantizer is not None:
        return quantizer.quantize_increment(leaf)
    return leaf - np.logaddexp.reduce(leaf, axis=-1, keepdims=True)


def rank_candidates(pm: np.ndarray, parents: np.ndarray, symbols: np.ndarray, keep: int) -> np.ndarray:
    """Indices of the top `keep` candidates by (pm desc, parent asc, symbol asc)."""
    order = np.lexsort((symbols, parents, -pm))
    return order[:keep]


def extend_and_select(pm: np.ndarray, increments: np.ndarray, frozen: bool,
                      frozen_value: int, list_size: int, index: int = None) -> Candidates:
    """
    Extend every path by one symbol and keep the best list_size.

    Args:
        pm: Current path metrics, shape (P,)
        increments: Per-path, per-symbol metric increments, shape (P, q)
        frozen: Whether the symbol is frozen
        frozen_value: Value used at a frozen symbol
        list_size: Maximum survivors
        index: Symbol index, for error reporting

    Raises:
        EmptyPathListError: If there are no paths to extend
    """
    P = len(pm)
    if P == 0:
        raise EmptyPathListError(index)
    if frozen:
        parents = np.arange(P)
        symbols = np.full(P, frozen_value, dtype=np.int64)
        return Candidates(parents, symbols, pm + increments[:, frozen_value])

    q = increments.shape[1]
    flat_pm = (pm[:, None] + increments).reshape(-1)
    parents = np.repeat(np.arange(P), q)
    symbols = np.tile(np.arange(q), P)
    keep = rank_candidates(flat_pm, parents, symbols, list_size)
    return Candidates(parents[keep], symbols[keep], flat_pm[keep])


def scl_decode(channel: np.ndarray, code: CodeSpec, list_size: int,
               quantizer: Optional[Quantizer] = None) -> ListDecodeResult:
    """
    List-decode one frame.

    Args:
        channel: Channel LLRVs, shape (N, q)
        code: Code to decode
        list_size: L
        quantizer: Enables fixed-point emulation

    Returns:
        ListDecodeResult with the best path first
    """
    trellis = Trellis(channel, code.kernel, code.field, quantizer)
    pm = np.zeros(1)
    for i in range(code.N):
        leaf = trellis.llrv(i)
        step = extend_and_select(
            pm,
            path_increments(leaf, quantizer),
            bool(code.frozen_mask[i]),
            int(code.frozen_values[i]),
            list_size,
            i,
        )
        if not code.frozen_mask[i]:
            trellis.select(step.parents)
        trellis.commit(step.symbols)
        pm = step.pm if quantizer is None else quantizer.saturate_pm(step.pm)

    order = np.lexsort((np.arange(len(pm)), -pm))
    paths = trellis.decisions[order]
    return ListDecodeResult(
        message=code.extract_message(paths[0]),
        u=paths[0],
        pm=pm[order],
        paths=paths,
    )


def sc_decode(channel: np.ndarray, code: CodeSpec,
              quantizer: Optional[Quantizer] = None) -> ListDecodeResult:
    """Plain SC: hard decision (lowest symbol on ties) at every free index."""
    trellis = Trellis(channel, code.kernel, code.field, quantizer)
    pm = 0.0
    for i in range(code.N):
        leaf = trellis.llrv(i)[0]
        if code.frozen_mask[i]:
            symbol = int(code.frozen_values[i])
        else:
            symbol = int(np.argmax(leaf))
        pm += float(path_increments(leaf[None], quantizer)[0, symbol])
        trellis.commit(symbol)

    u = trellis.decisions[0]
    return ListDecodeResult(
        message=code.extract_message(u),
        u=u,
        pm=np.array([pm]),
        paths=trellis.decisions.copy(),
    )
