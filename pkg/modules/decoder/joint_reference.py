"""
Joint-Extension Reference Decoder
=================================
Extends all M sub-decoder symbols of a level at once: every slot branches
into all q^M symbol tuples, tuples violating the level constraints are
dropped and the top L survive an exhaustive sort. No skimming, no bypass.
Slow; used to check the split-tree decoder at small sizes.
"""

import itertools

import numpy as np

from modules.code.split import SplitSpec
from modules.decoder.scl import ListDecodeResult, path_increments
from modules.decoder.split_decoder import (
    GlobalSet,
    SubDecoderState,
    distribute_paths,
    select_globals,
    sum_member_pm,
)
from modules.decoder.trellis import Trellis
from modules.errors import FrameDecodeFailure


def joint_reference_decode(channel: np.ndarray, split: SplitSpec, list_size: int) -> ListDecodeResult:
    code = split.code
    q, M = code.q, split.M
    blocks = split.channel_blocks(channel)
    states = [SubDecoderState(Trellis(blocks[j], code.kernel, code.field), np.zeros(1)) for j in range(M)]
    tuples = np.array(list(itertools.product(range(q), repeat=M)), dtype=np.int64)

    for level in range(split.sub_length):
        increments = [path_increments(s.trellis.llrv(level)) for s in states]
        P = len(states[0].pm)
        parents = np.repeat(np.arange(P), len(tuples))
        symbols = np.tile(tuples, (P, 1))
        member_pm = np.stack(
            [states[j].pm[parents] + increments[j][parents, symbols[:, j]] for j in range(M)],
            axis=1,
        )
        candidates = GlobalSet(parents, symbols, member_pm, sum_member_pm(member_pm))
        valid = split.valid_tuples(level, symbols)
        if not np.any(valid):
            raise FrameDecodeFailure(level, "joint reference found no valid tuple")
        distribute_paths(select_globals(candidates.take(np.flatnonzero(valid)), list_size), states)

    pm = sum_member_pm(np.stack([s.pm for s in states], axis=1))
    order = np.lexsort((np.arange(len(pm)), -pm))
    paths = split.merge_w(np.stack([s.trellis.decisions for s in states], axis=1)[order])
    return ListDecodeResult(
        message=code.extract_message(paths[0]),
        u=paths[0],
        pm=pm[order],
        paths=paths,
    )
