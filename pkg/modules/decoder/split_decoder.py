"""
Split-Tree List Decoding
========================
M sub-decoders over the N/M-symbol subcode trellises, joined level by level
through reconciliation:

1. every sub-decoder extends its slots (one slot per global survivor) by all
   q symbols
2. the pivot sub-decoders of the level, whose symbols fix a valid tuple, are
   skimmed to the top L_s; a lone pivot is ranked by the metric of the
   valid tuple it completes
3. per global parent, the Cartesian product of the pivot lists is formed and
   each combination completed into its unique valid tuple
4. the valid global paths are sorted and the top L kept
5. member sub-paths are distributed back into the sub-decoder slots

Levels where every sub-decoder symbol is locally frozen skip reconciliation.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from config.settings import settings
from modules.code.split import SplitSpec
from modules.decoder.scl import ListDecodeResult, path_increments, rank_candidates
from modules.decoder.trellis import Trellis
from modules.errors import (
    ConstraintViolationError,
    FrameDecodeFailure,
    SimulationConfigError,
)
from modules.llrv.quantize import Quantizer

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SkimConfig:
    """
    Attributes:
        list_size: Global list size L
        skim: Sub-paths kept per sub-decoder per level (L_s)
        M: Split factor
        assembly_budget: Upper bound on L_s^M
    """
    list_size: int = settings.list_size
    skim: int = settings.skim
    M: int = settings.split_factor
    assembly_budget: int = settings.assembly_budget

    def resolved(self, q: int) -> "SkimConfig":
        """Clamp L_s into [L, qL] and check the assembly budget."""
        if self.list_size < 1:
            raise SimulationConfigError(f"List size L={self.list_size} must be positive")
        skim = self.skim
        if skim < self.list_size:
            logger.warning(f"Skimming factor L_s={skim} below L={self.list_size}; raised to L")
            skim = self.list_size
        if skim > q * self.list_size:
            logger.warning(f"Skimming factor L_s={skim} above qL={q * self.list_size}; clamped")
            skim = q * self.list_size
        if skim ** self.M > self.assembly_budget:
            raise SimulationConfigError(
                f"L_s^M = {skim ** self.M} exceeds the assembly budget",
                f"budget {self.assembly_budget}"
            )
        return SkimConfig(self.list_size, skim, self.M, self.assembly_budget)


@dataclass
class SubPathSet:
    """Candidate extensions of one sub-decoder at one level."""
    sub_decoder: int
    parents: np.ndarray
    symbols: np.ndarray
    pm: np.ndarray

    def __len__(self) -> int:
        return len(self.pm)

    def take(self, index: np.ndarray) -> "SubPathSet":
        return SubPathSet(self.sub_decoder, self.parents[index], self.symbols[index], self.pm[index])


@dataclass
class GlobalSet:
    """
    Assembled global paths.

    Attributes:
        parents: Global survivor each path extends
        symbols: Member symbols w, shape (G, M)
        member_pm: Member sub-path metrics, shape (G, M)
        pm: Sum of member metrics
    """
    parents: np.ndarray
    symbols: np.ndarray
    member_pm: np.ndarray
    pm: np.ndarray

    def __len__(self) -> int:
        return len(self.pm)

    def take(self, index: np.ndarray) -> "GlobalSet":
        return GlobalSet(self.parents[index], self.symbols[index], self.member_pm[index], self.pm[index])


@dataclass
class SubDecoderState:
    """Trellis plus per-slot local metrics of one sub-decoder."""
    trellis: Trellis
    pm: np.ndarray


@dataclass
class SplitStats:
    bypassed_levels: int = 0
    reconciled_levels: int = 0
    valid_tuple_counts: List[int] = field(default_factory=list)
    skimmed_out: int = 0

    def to_dict(self) -> dict:
        return {
            "bypassed_levels": self.bypassed_levels,
            "reconciled_levels": self.reconciled_levels,
            "valid_tuple_counts": list(self.valid_tuple_counts),
            "skimmed_out": self.skimmed_out,
        }


def sum_member_pm(member_pm: np.ndarray) -> np.ndarray:
    """Global metric as a left-to-right sum over sub-decoders."""
    total = member_pm[:, 0].copy()
    for j in range(1, member_pm.shape[1]):
        total = total + member_pm[:, j]
    return total


# ==================== Reconciliation stages ====================

def skim_subpaths(subpaths: SubPathSet, level: int, frozen: bool, frozen_value: int, skim: int) -> SubPathSet:
    """
    Drop locally invalid sub-paths and keep the top `skim` by metric.

    Raises:
        FrameDecodeFailure: If no sub-path survives the frozen filter
    """
    if frozen:
        subpaths = subpaths.take(np.flatnonzero(subpaths.symbols == frozen_value))
    if len(subpaths) == 0:
        raise FrameDecodeFailure(level, f"sub-decoder {subpaths.sub_decoder} has no valid sub-path")
    keep = rank_candidates(subpaths.pm, subpaths.parents, subpaths.symbols, skim)
    return subpaths.take(keep)


def rank_by_completion(tables: List[np.ndarray], level: int, split: SplitSpec, skim: int) -> SubPathSet:
    """
    Keep the top `skim` extensions of a level's single pivot sub-decoder.

    Each pivot symbol fixes one valid tuple, so candidates are ranked by
    the metric of that whole tuple rather than by their own.
    """
    pivot = split.constraints[level].pivots[0]
    P, q = tables[pivot].shape
    parents = np.repeat(np.arange(P), q)
    symbols = np.tile(np.arange(q), P)
    w = split.complete_tuples(level, symbols[:, None])
    tuple_pm = sum_member_pm(np.stack([tables[j][parents, w[:, j]] for j in range(split.M)], axis=1))
    keep = rank_candidates(tuple_pm, parents, symbols, skim)
    return SubPathSet(pivot, parents[keep], symbols[keep], tables[pivot][parents[keep], symbols[keep]])


def skim_pivots(tables: List[np.ndarray], level: int, split: SplitSpec, skim: int) -> List[SubPathSet]:
    """
    Skimmed sub-path lists of the pivot sub-decoders at one level.

    Args:
        tables: Per sub-decoder extension metrics pm[p] + increment[p, x], shape (P, q)
        level: Level index
        split: Split code
        skim: Sub-paths kept per pivot (L_s)

    Raises:
        FrameDecodeFailure: If a pivot has no sub-path left
    """
    c = split.constraints[level]
    if c.free_count == 1:
        return [rank_by_completion(tables, level, split, skim)]
    kept = []
    for j in c.pivots:
        P, q = tables[j].shape
        extended = SubPathSet(j, np.repeat(np.arange(P), q), np.tile(np.arange(q), P), tables[j].reshape(-1))
        kept.append(skim_subpaths(extended, level, c.w_frozen[j], c.w_values[j], skim))
    return kept


def assemble_globals(pivot_sets: List[SubPathSet], tables: List[np.ndarray],
                     level: int, split: SplitSpec) -> GlobalSet:
    """
    Combine pivot sub-paths sharing a global parent and complete each
    combination into its valid tuple.

    Non-pivot members take the symbol the level constraints leave them,
    with its metric read from their full extension table.

    Raises:
        FrameDecodeFailure: If no global parent is shared by every pivot
    """
    P = tables[0].shape[0]
    if not pivot_sets:
        parents = np.arange(P)
        pivot_symbols = np.zeros((P, 0), dtype=np.int64)
    else:
        shared = pivot_sets[0].parents
        for sub in pivot_sets[1:]:
            shared = np.intersect1d(shared, sub.parents)
        parent_rows, symbol_rows = [], []
        for parent in np.unique(shared):
            rows = [np.flatnonzero(sub.parents == parent) for sub in pivot_sets]
            picks = [g.reshape(-1) for g in np.meshgrid(*rows, indexing="ij")]
            parent_rows.append(np.full(len(picks[0]), parent, dtype=np.int64))
            symbol_rows.append(np.stack([sub.symbols[pick] for sub, pick in zip(pivot_sets, picks)], axis=1))
        if not parent_rows:
            raise FrameDecodeFailure(level, "no global parent shared by all pivot sub-decoders")
        parents = np.concatenate(parent_rows)
        pivot_symbols = np.concatenate(symbol_rows)

    symbols = split.complete_tuples(level, pivot_symbols)
    member_pm = np.stack([tables[j][parents, symbols[:, j]] for j in range(split.M)], axis=1)
    return GlobalSet(parents, symbols, member_pm, sum_member_pm(member_pm))


def select_globals(candidates: GlobalSet, list_size: int) -> GlobalSet:
    """Top list_size globals by (pm desc, parent asc, member symbols asc)."""
    keys = [candidates.symbols[:, j] for j in range(candidates.symbols.shape[1] - 1, -1, -1)]
    order = np.lexsort(keys + [candidates.parents, -candidates.pm])
    return candidates.take(order[:list_size])


def distribute_paths(top: GlobalSet, states: List[SubDecoderState]) -> None:
    """Overwrite every sub-decoder's slots with the members of the kept globals."""
    for j, state in enumerate(states):
        state.trellis.select(top.parents)
        state.trellis.commit(top.symbols[:, j])
        state.pm = top.member_pm[:, j].copy()


# ==================== Decoder ====================

def _check_survivors(states: List[SubDecoderState], split: SplitSpec, level: int) -> None:
    w = np.stack([s.trellis.decisions[:, level] for s in states], axis=1)
    u = split.level_u(w)
    c = split.constraints[level]
    for k, (frozen, value) in enumerate(zip(c.u_frozen, c.u_values)):
        if frozen and np.any(u[:, k] != value):
            raise ConstraintViolationError(level, c.u_indices[k])


def s_nbscl_decode(channel: np.ndarray, split: SplitSpec, cfg: SkimConfig,
                   quantizer: Optional[Quantizer] = None, bypass: bool = True,
                   debug_checks: bool = False) -> ListDecodeResult:
    """
    Decode one frame with M sub-decoders and per-level reconciliation.

    Args:
        channel: Channel LLRVs, shape (N, q)
        split: Split code
        cfg: Skimming configuration
        quantizer: Enables fixed-point emulation
        bypass: Skip reconciliation at all-frozen levels
        debug_checks: Verify frozen constraints on every survivor each level

    Returns:
        ListDecodeResult whose stats hold the reconciliation counters

    Raises:
        FrameDecodeFailure: If a level has no valid global path
    """
    code = split.code
    cfg = cfg.resolved(code.q)
    blocks = split.channel_blocks(channel)
    states = [
        SubDecoderState(Trellis(blocks[j], code.kernel, code.field, quantizer), np.zeros(1))
        for j in range(split.M)
    ]
    stats = SplitStats()

    for level, c in enumerate(split.constraints):
        increments = [path_increments(s.trellis.llrv(level), quantizer) for s in states]

        if bypass and c.bypass:
            for j, state in enumerate(states):
                state.pm = state.pm + increments[j][:, c.w_values[j]]
                state.trellis.commit(c.w_values[j])
            stats.bypassed_levels += 1
        else:
            tables = [state.pm[:, None] + inc for state, inc in zip(states, increments)]
            pivot_sets = skim_pivots(tables, level, split, cfg.skim)
            stats.skimmed_out += sum(tables[s.sub_decoder].size - len(s) for s in pivot_sets)
            candidates = assemble_globals(pivot_sets, tables, level, split)
            stats.valid_tuple_counts.append(len(candidates))
            distribute_paths(select_globals(candidates, cfg.list_size), states)
            stats.reconciled_levels += 1
            logger.debug(f"Level {level}: {len(candidates)} valid tuples, {states[0].trellis.batch} kept")

        if quantizer is not None:
            for state in states:
                state.pm = quantizer.saturate_pm(state.pm)
        if debug_checks:
            _check_survivors(states, split, level)

    pm = sum_member_pm(np.stack([s.pm for s in states], axis=1))
    order = np.lexsort((np.arange(len(pm)), -pm))
    W = np.stack([s.trellis.decisions for s in states], axis=1)[order]
    paths = split.merge_w(W)
    return ListDecodeResult(
        message=code.extract_message(paths[0]),
        u=paths[0],
        pm=pm[order],
        paths=paths,
        stats=stats.to_dict(),
    )
