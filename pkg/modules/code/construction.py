"""
Monte-Carlo Code Construction
=============================
Genie-aided SC simulation of random codewords at a design Eb/N0.

For every index the simulator counts how often the SC hard decision is
wrong while all earlier symbols are fed back correctly. The N-K indices
with the highest counts are frozen (to zero).
"""

import logging
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from config.settings import settings
from modules.code.polar import butterfly_encode
from modules.code.spec import CodeSpec
from modules.decoder.trellis import Trellis
from modules.errors import CodeParameterError, ConstructionBudgetError
from modules.gf.field import GfContext, build_field
from modules.llrv.transform import KernelCoeffs
from modules.sim.channel import ChannelConfig, channel_llrv, transmit
from modules.sim.parallel import FrameWorkerPool, ParallelConfig
from modules.sim.rng import CONSTRUCTION_STREAM, frame_rng

logger = logging.getLogger(__name__)

MIN_TRIALS = 1000


@dataclass(frozen=True)
class ConstructionConfig:
    """Monte-Carlo construction settings."""
    design_ebn0: float = settings.design_ebn0
    trials: int = settings.construction_trials
    seed: int = settings.construction_seed
    batch: int = settings.construction_batch
    workers: int = 1

    def validate(self) -> "ConstructionConfig":
        if self.trials < MIN_TRIALS:
            raise ConstructionBudgetError(self.trials, MIN_TRIALS)
        if self.batch < 1:
            raise CodeParameterError(f"Construction batch {self.batch} must be positive")
        return self


def genie_batch(N: int, r: int, poly: int, alpha: int, beta: int, ebn0_db: float,
                rate: float, seed: int, stream: int, first_frame: int, count: int) -> np.ndarray:
    """
    Symbol-error counts for frames [first_frame, first_frame + count).

    Takes plain values so it can be shipped to worker processes.
    """
    ctx = build_field(r, poly)
    kernel = KernelCoeffs(alpha, beta)
    channel_cfg = ChannelConfig(ebn0_db=ebn0_db, rate=rate, r=r, seed=seed)

    u = np.empty((count, N), dtype=np.int64)
    y = np.empty((count, N, r))
    for row, frame in enumerate(range(first_frame, first_frame + count)):
        rng = frame_rng(seed, 0, frame, stream)
        u[row] = rng.integers(0, ctx.q, size=N)
        y[row] = transmit(butterfly_encode(u[row], kernel, ctx), channel_cfg, rng)

    trellis = Trellis(channel_llrv(y, channel_cfg.sigma2, r), kernel, ctx)
    counts = np.zeros(N, dtype=np.int64)
    for i in range(N):
        leaf = trellis.llrv(i)
        counts[i] = int(np.count_nonzero(np.argmax(leaf, axis=-1) != u[:, i]))
        trellis.commit(u[:, i])
    return counts


def genie_error_counts(N: int, field: GfContext, kernel: KernelCoeffs, cfg: ConstructionConfig,
                       rate: float, stream: int = CONSTRUCTION_STREAM,
                       progress: Optional[Callable[[int, int], None]] = None) -> np.ndarray:
    """
    Per-index genie-aided SC error counts over cfg.trials frames.

    Batches may run on a worker pool; integer counts are summed, so the
    result does not depend on the worker count.
    """
    cfg.validate()
    batches = [
        (start, min(cfg.batch, cfg.trials - start))
        for start in range(0, cfg.trials, cfg.batch)
    ]
    common = (N, field.r, field.poly, kernel.alpha, kernel.beta, cfg.design_ebn0, rate, cfg.seed, stream)
    counts = np.zeros(N, dtype=np.int64)
    done = 0
    with FrameWorkerPool(ParallelConfig(max_workers=cfg.workers)) as pool:
        # One round per worker count keeps progress reporting responsive
        step = max(1, pool.config.max_workers)
        for offset in range(0, len(batches), step):
            round_args = [common + batch for batch in batches[offset:offset + step]]
            for result in pool.map_ordered(genie_batch, round_args):
                counts += result
            done += sum(count for _, count in batches[offset:offset + step])
            if progress is not None:
                progress(done, cfg.trials)
    return counts


def construct_frozen_set(N: int, K: int, field: GfContext, kernel: KernelCoeffs,
                         cfg: Optional[ConstructionConfig] = None,
                         progress: Optional[Callable[[int, int], None]] = None) -> CodeSpec:
    """
    Build an (N, K) code by genie-aided Monte-Carlo construction.

    Args:
        N: Code length
        K: Free symbols
        field: Field context
        kernel: Kernel coefficients
        cfg: Construction settings (design Eb/N0 is taken at rate K/N)
        progress: Optional callback(frames_done, frames_total)

    Raises:
        ConstructionBudgetError: If cfg.trials < 1000
    """
    cfg = (cfg or ConstructionConfig()).validate()
    kernel.validate(field)
    if not 0 <= K <= N:
        raise CodeParameterError(f"K={K} must lie in [0, N={N}]")

    if K in (0, N):
        frozen = {i: 0 for i in range(N - K)}
        return CodeSpec.from_frozen(N, field, kernel, frozen)

    counts = genie_error_counts(N, field, kernel, cfg, rate=K / N, progress=progress)
    indices = np.arange(N)
    worst = np.lexsort((indices, -counts))[:N - K]
    logger.info(
        f"Constructed ({N}, {K}) over GF({field.q}) from {cfg.trials:,} frames; "
        f"max error count {int(counts.max())}"
    )
    return CodeSpec.from_frozen(N, field, kernel, {int(i): 0 for i in worst})
