"""
Split-Tree Code Decomposition
=============================
Splits an N-symbol code into M subcodes of length N/M.

With F^(x n) = T (x) F^(x (n-m)) and T = F^(x m), the codeword block j is the
subcode encoding of w_j, where at every level i

    w_j[i] = sum_k T[k, j] * u[k * N/M + i]

Sub-decoder j decodes w_j from channel block j. A w_j[i] is locally frozen
when every u it depends on is frozen; the remaining frozen symbols become
cross-subcode constraints checked during reconciliation through
u = w * T^-1.

At a level with f free u, the w tuples meeting the frozen values form an
affine family with f degrees of freedom. Picking f pivot sub-decoders
whose columns of T are independent on the free rows, every valid tuple
follows from the pivot symbols alone:

    w = offset + w_pivots * completion
"""

import itertools
import logging
from dataclasses import dataclass

import numpy as np

from modules.code.polar import gf_matmul, gf_matrix_inverse, kronecker_power
from modules.code.spec import CodeSpec
from modules.errors import CodeParameterError, SplitFactorError
from modules.gf.field import GfContext

logger = logging.getLogger(__name__)

SUPPORTED_SPLITS = (2, 4)


@dataclass(frozen=True)
class LevelConstraint:
    """Frozen relations linking the M sub-decoders at one level."""
    level: int
    u_indices: tuple
    u_frozen: tuple
    u_values: tuple
    w_frozen: tuple
    w_values: tuple
    pivots: tuple = ()
    completion: tuple = ()
    offset: tuple = ()

    @property
    def free_count(self) -> int:
        return len(self.u_frozen) - sum(self.u_frozen)

    @property
    def bypass(self) -> bool:
        """All sub-decoder symbols are fixed, so reconciliation has nothing to decide."""
        return all(self.w_frozen)

    @property
    def cross_constrained(self) -> bool:
        """Some frozen u is not pinned by a locally frozen w."""
        return any(self.u_frozen) and not self.bypass

    def to_dict(self) -> dict:
        return {
            "level": self.level,
            "u_indices": list(self.u_indices),
            "u_frozen": list(self.u_frozen),
            "w_frozen": list(self.w_frozen),
            "bypass": self.bypass,
            "pivots": list(self.pivots),
        }


@dataclass(frozen=True, eq=False)
class SplitSpec:
    """
    An M-way split of a code.

    Attributes:
        code: The full code
        M: Split factor
        transform: T = F^(x m), shape (M, M)
        inverse: T^-1 over GF(q)
        subcodes: One CodeSpec of length N/M per sub-decoder
        constraints: One LevelConstraint per level
    """
    code: CodeSpec
    M: int
    transform: np.ndarray
    inverse: np.ndarray
    subcodes: tuple
    constraints: tuple

    @property
    def sub_length(self) -> int:
        return self.code.N // self.M

    @property
    def level_pattern(self) -> np.ndarray:
        """True for levels whose M symbols are all frozen."""
        return np.array([c.bypass for c in self.constraints], dtype=bool)

    @property
    def bypass_levels(self) -> int:
        return int(self.level_pattern.sum())

    @property
    def u_frozen(self) -> np.ndarray:
        """Frozen flags per (level, k)."""
        return np.array([c.u_frozen for c in self.constraints], dtype=bool)

    @property
    def u_values(self) -> np.ndarray:
        return np.array([c.u_values for c in self.constraints], dtype=np.int64)

    def split_u(self, u: np.ndarray) -> np.ndarray:
        """Map u (..., N) to the sub-decoder inputs W (..., M, N/M)."""
        U = np.asarray(u, dtype=np.int64).reshape(*np.shape(u)[:-1], self.M, self.sub_length)
        W = gf_matmul(np.swapaxes(U, -1, -2), self.transform, self.code.field)
        return np.swapaxes(W, -1, -2)

    def merge_w(self, W: np.ndarray) -> np.ndarray:
        """Inverse of split_u."""
        W = np.asarray(W, dtype=np.int64)
        U = gf_matmul(np.swapaxes(W, -1, -2), self.inverse, self.code.field)
        return np.swapaxes(U, -1, -2).reshape(*W.shape[:-2], self.code.N)

    def level_u(self, w_tuples: np.ndarray) -> np.ndarray:
        """Original symbols (P, M) for candidate tuples (P, M) at one level."""
        return gf_matmul(np.asarray(w_tuples, dtype=np.int64), self.inverse, self.code.field)

    def valid_tuples(self, level: int, w_tuples: np.ndarray) -> np.ndarray:
        """Boolean mask of tuples whose implied u meets every frozen value at this level."""
        c = self.constraints[level]
        u = self.level_u(w_tuples)
        frozen = np.array(c.u_frozen, dtype=bool)
        values = np.array(c.u_values, dtype=np.int64)
        return np.all((u == values) | ~frozen, axis=-1)

    def complete_tuples(self, level: int, pivot_symbols: np.ndarray) -> np.ndarray:
        """
        The valid w tuples (P, M) fixed by the pivot sub-decoder symbols (P, f).

        Pivot columns reproduce pivot_symbols; every other member is the
        unique value meeting the frozen u at this level.
        """
        c = self.constraints[level]
        pivot_symbols = np.asarray(pivot_symbols, dtype=np.int64)
        offset = np.array(c.offset, dtype=np.int64)
        if not c.pivots:
            return np.broadcast_to(offset, (pivot_symbols.shape[0], self.M)).copy()
        completion = np.array(c.completion, dtype=np.int64)
        return offset ^ gf_matmul(pivot_symbols, completion, self.code.field)

    def channel_blocks(self, channel: np.ndarray) -> np.ndarray:
        """Split channel LLRVs (N, q) into (M, N/M, q)."""
        return np.asarray(channel).reshape(self.M, self.sub_length, -1)

    def stats(self) -> dict:
        return {
            "M": self.M,
            "levels": self.sub_length,
            "bypass_levels": self.bypass_levels,
            "reconciled_levels": self.sub_length - self.bypass_levels,
            "cross_constrained_levels": sum(c.cross_constrained for c in self.constraints),
        }


def _level_pivots(T: np.ndarray, frozen: np.ndarray, base: np.ndarray, ctx: GfContext) -> tuple:
    """Pivot sub-decoders, completion matrix and offset for one level."""
    free = np.flatnonzero(~frozen)
    if len(free) == 0:
        return (), np.zeros((0, T.shape[1]), dtype=np.int64), base
    for pivots in itertools.combinations(range(T.shape[1]), len(free)):
        try:
            A_inv = gf_matrix_inverse(T[np.ix_(free, pivots)], ctx)
        except CodeParameterError:
            continue
        completion = gf_matmul(A_inv, T[free], ctx)
        offset = base ^ gf_matmul(base[list(pivots)], completion, ctx)
        return pivots, completion, offset
    # T is invertible, so its free rows always have full rank
    raise CodeParameterError("Split transform is singular on the free rows")


def split_code(code: CodeSpec, M: int) -> SplitSpec:
    """
    Derive the M subcodes and the per-level constraints of a code.

    Raises:
        SplitFactorError: If M is not 2 or 4, or M >= N
    """
    if M not in SUPPORTED_SPLITS or M >= code.N:
        raise SplitFactorError(M, code.N)

    ctx = code.field
    m = M.bit_length() - 1
    S = code.N // M
    T = kronecker_power(code.kernel, m, ctx)
    T_inv = gf_matrix_inverse(T, ctx)
    support = T != 0

    u_mask = code.frozen_mask.reshape(M, S)
    u_vals = code.frozen_values.reshape(M, S)

    constraints = []
    w_mask = np.zeros((M, S), dtype=bool)
    w_vals = np.zeros((M, S), dtype=np.int64)
    for i in range(S):
        frozen = u_mask[:, i]
        values = u_vals[:, i]
        # Frozen u contribute theta_k, free ones are unknown
        w_frozen = np.array([bool(np.all(frozen[support[:, j]])) for j in range(M)])
        base = gf_matmul(np.where(frozen, values, 0), T, ctx)
        w_values = np.where(w_frozen, base, 0)
        pivots, completion, offset = _level_pivots(T, frozen, base, ctx)
        w_mask[:, i] = w_frozen
        w_vals[:, i] = w_values
        constraints.append(LevelConstraint(
            level=i,
            u_indices=tuple(int(k * S + i) for k in range(M)),
            u_frozen=tuple(bool(x) for x in frozen),
            u_values=tuple(int(x) for x in values),
            w_frozen=tuple(bool(x) for x in w_frozen),
            w_values=tuple(int(x) for x in w_values),
            pivots=tuple(int(j) for j in pivots),
            completion=tuple(tuple(int(x) for x in row) for row in completion),
            offset=tuple(int(x) for x in offset),
        ))

    subcodes = tuple(
        CodeSpec(
            N=S,
            K=int(S - w_mask[j].sum()),
            field=ctx,
            kernel=code.kernel,
            frozen_mask=w_mask[j],
            frozen_values=w_vals[j],
        )
        for j in range(M)
    )
    spec = SplitSpec(code=code, M=M, transform=T, inverse=T_inv,
                     subcodes=subcodes, constraints=tuple(constraints))
    logger.debug(f"Split {code.describe()} into M={M}: {spec.stats()}")
    return spec
