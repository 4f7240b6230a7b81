"""
FER Simulation Harness
======================
Monte-Carlo frame error rate sweeps.

Each frame draws its message and noise from its own (seed, point, frame)
stream. Batches run on the worker pool and their per-frame outcomes are
consumed in frame order, stopping at exactly the frame where the error
target or frame budget is reached. The frame and error counts are
therefore identical for any worker count.
"""

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from config.settings import settings
from modules.app.events import EventCallback, emit, make_point_event, make_progress_event
from modules.code.construction import ConstructionConfig, construct_frozen_set
from modules.code.polar import encode
from modules.code.spec import CodeSpec
from modules.decoder.factory import DecoderFactory
from modules.decoder.strategies.base import DecoderConfig
from modules.errors import SimulationConfigError
from modules.gf.field import build_field
from modules.llrv.transform import KernelCoeffs
from modules.sim.channel import ChannelConfig, channel_llrv, transmit
from modules.sim.parallel import FrameBatch, FrameWorkerPool, ParallelConfig
from modules.sim.report import FerPoint
from modules.sim.rng import frame_rng

logger = logging.getLogger(__name__)

FRAME_OK = 0
FRAME_ERROR = 1
FRAME_FAILURE = 2


@dataclass(frozen=True)
class SweepConfig:
    """Eb/N0 sweep and stopping rule."""
    ebn0_db: tuple
    seed: int = 0
    min_errors: int = settings.min_errors
    max_frames: int = settings.max_frames
    batch_frames: int = settings.batch_frames
    workers: int = settings.max_workers

    def validate(self) -> "SweepConfig":
        if not self.ebn0_db:
            raise SimulationConfigError("Sweep needs at least one Eb/N0 point")
        if self.min_errors < 1 or self.max_frames < 1 or self.batch_frames < 1:
            raise SimulationConfigError(
                "min_errors, max_frames and batch_frames must be positive",
                f"got {self.min_errors}, {self.max_frames}, {self.batch_frames}"
            )
        return self


def simulate_frames(code: CodeSpec, decoder_config: DecoderConfig, ebn0_db: float, seed: int,
                    batch: FrameBatch) -> np.ndarray:
    """
    Encode, transmit and decode a run of frames.

    Returns:
        Per-frame outcome codes (FRAME_OK, FRAME_ERROR, FRAME_FAILURE)
    """
    decoder = DecoderFactory.create(decoder_config.kind, code, decoder_config)
    channel_cfg = ChannelConfig(ebn0_db=ebn0_db, rate=code.rate, r=code.field.r, seed=seed)
    outcomes = np.zeros(batch.count, dtype=np.int8)
    for row, frame in enumerate(batch.frames):
        rng = frame_rng(seed, batch.point, frame)
        message = code.random_message(rng)
        c = encode(code.place_message(message), code)
        y = transmit(c, channel_cfg, rng)
        result = decoder.decode(channel_llrv(y, channel_cfg.sigma2, code.field.r))
        if not result.success:
            outcomes[row] = FRAME_FAILURE
        elif not np.array_equal(result.message, message):
            outcomes[row] = FRAME_ERROR
    return outcomes


def run_fer(code: CodeSpec, decoder_config: DecoderConfig, sweep: SweepConfig,
            progress: EventCallback = None) -> list[FerPoint]:
    """
    Simulate every sweep point until min_errors or max_frames.

    Args:
        code: Code under test
        decoder_config: Decoder selection and parameters
        sweep: Eb/N0 points and stopping rule
        progress: Optional event callback

    Returns:
        One FerPoint per Eb/N0, in sweep order
    """
    sweep.validate()
    DecoderFactory.create(decoder_config.kind, code, decoder_config)  # fail fast on bad settings
    points = []
    with FrameWorkerPool(ParallelConfig(max_workers=sweep.workers)) as pool:
        for p, ebn0 in enumerate(sweep.ebn0_db):
            point = FerPoint(ebn0_db=float(ebn0), frames=0, errors=0)
            stage = f"{ebn0:g} dB"
            next_frame = 0
            done = False
            while not done:
                round_args = []
                for _ in range(pool.config.max_workers):
                    count = min(sweep.batch_frames, sweep.max_frames - next_frame)
                    if count <= 0:
                        break
                    round_args.append((code, decoder_config, float(ebn0), sweep.seed, FrameBatch(p, next_frame, count)))
                    next_frame += count
                if not round_args:
                    break

                for outcomes in pool.map_ordered(simulate_frames, round_args):
                    for outcome in outcomes:
                        point.frames += 1
                        point.errors += int(outcome != FRAME_OK)
                        point.failures += int(outcome == FRAME_FAILURE)
                        if point.errors >= sweep.min_errors or point.frames >= sweep.max_frames:
                            done = True
                            break
                    if done:
                        break

                fraction = max(point.errors / sweep.min_errors, point.frames / sweep.max_frames)
                emit(progress, make_progress_event(
                    stage, fraction,
                    f"{point.errors} errors / {point.frames} frames"
                ))

            emit(progress, make_point_event(stage, point.ebn0_db, point.frames, point.errors, point.failures))
            logger.info(f"Eb/N0 {ebn0:g} dB: FER {point.fer:.3g} ({point.errors}/{point.frames})")
            points.append(point)
    return points


def binary_baseline(N_bits: int, K_bits: int, cfg: Optional[ConstructionConfig] = None) -> CodeSpec:
    """Binary (q = 2, alpha = beta = 1) code built by the same construction."""
    return construct_frozen_set(N_bits, K_bits, build_field(1), KernelCoeffs(1, 1), cfg)


def parse_ebn0_list(text: str) -> tuple:
    """Parse "1.0,1.5,2.0" into floats."""
    try:
        values = tuple(float(tok) for tok in text.split(",") if tok.strip())
    except ValueError:
        raise SimulationConfigError(f"Cannot parse Eb/N0 list '{text}'")
    if not values:
        raise SimulationConfigError("Empty Eb/N0 list")
    return values
