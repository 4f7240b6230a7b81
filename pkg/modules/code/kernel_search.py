"""
Kernel Coefficient Search
=========================
Picks (alpha, beta) by how strongly a kernel polarizes: the spread of
genie-aided per-index symbol error rates at the design Eb/N0.
"""

import logging
from typing import Optional, Sequence

import numpy as np

from modules.code.construction import ConstructionConfig, genie_error_counts
from modules.gf.field import GfContext
from modules.llrv.transform import KernelCoeffs
from modules.sim.rng import KERNEL_SEARCH_STREAM

logger = logging.getLogger(__name__)


def default_candidates(field: GfContext) -> list[KernelCoeffs]:
    """Small alpha/beta grid valid for the field."""
    pairs = [(1, 1), (2, 1), (3, 1), (1, 2), (2, 3), (3, 2)]
    return [KernelCoeffs(a, b) for a, b in pairs if a < field.q and b < field.q]


def polarization_proxy(N: int, field: GfContext, kernel: KernelCoeffs,
                       cfg: ConstructionConfig, rate: float = 0.5) -> float:
    """Population standard deviation of per-index symbol error rates."""
    counts = genie_error_counts(N, field, kernel, cfg, rate, stream=KERNEL_SEARCH_STREAM)
    return float(np.std(counts / cfg.trials))


def search_kernel(N: int, field: GfContext, candidates: Optional[Sequence[KernelCoeffs]] = None,
                  cfg: Optional[ConstructionConfig] = None,
                  rate: float = 0.5) -> tuple[KernelCoeffs, dict[tuple[int, int], float]]:
    """
    Evaluate every candidate and return the best plus all scores.

    Ties go to the earliest candidate.
    """
    cfg = (cfg or ConstructionConfig()).validate()
    candidates = list(candidates or default_candidates(field))
    scores: dict[tuple[int, int], float] = {}
    best, best_score = None, -np.inf
    for kernel in candidates:
        kernel.validate(field)
        score = polarization_proxy(N, field, kernel, cfg, rate)
        scores[(kernel.alpha, kernel.beta)] = score
        logger.debug(f"Kernel alpha={kernel.alpha} beta={kernel.beta}: proxy {score:.5f}")
        if score > best_score:
            best, best_score = kernel, score
    logger.info(f"Selected kernel alpha={best.alpha} beta={best.beta} (proxy {best_score:.5f})")
    return best, scores
