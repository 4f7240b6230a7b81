"""
Simulation Module
=================
Channel model, counter-based random streams and the frame worker pool.

The FER harness lives in modules.sim.fer and its outputs in modules.sim.report.
"""

from .channel import ChannelConfig, constellation, modulate, transmit, channel_llrv, noiseless_llrv
from .rng import frame_rng
from .parallel import ParallelConfig, FrameBatch, FrameWorkerPool

__all__ = [
    "ChannelConfig",
    "constellation",
    "modulate",
    "transmit",
    "channel_llrv",
    "noiseless_llrv",
    "frame_rng",
    "ParallelConfig",
    "FrameBatch",
    "FrameWorkerPool",
]
