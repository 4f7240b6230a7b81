"""
Run Controller
==============
Business logic behind the command-line surface.

Each method runs one subcommand from a validated RunConfig and returns
plain results; presentation stays in the CLI layer.
"""

import logging
import uuid
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from config.fields import get_preset
from modules.app.config import RunConfig
from modules.app.events import (
    EventCallback,
    RunState,
    emit,
    make_progress_event,
    make_state_event,
)
from modules.code.construction import ConstructionConfig, construct_frozen_set
from modules.code.frozen_io import read_frozen_set, write_frozen_set
from modules.code.kernel_search import search_kernel
from modules.code.polar import encode
from modules.code.spec import CodeSpec
from modules.code.split import split_code
from modules.decoder.strategies.base import DecoderConfig
from modules.errors import RunConfigError
from modules.gf.field import field_for_order
from modules.hardware.resources import resource_summary
from modules.hardware.sorter import check_sorters
from modules.hardware.timing import (
    ArchParams,
    TimingReport,
    dm_frame_latency,
    parse_levels,
    speedup,
    st_frame_latency,
    synthetic_frozen,
)
from modules.llrv.quantize import Quantizer
from modules.llrv.transform import KernelCoeffs
from modules.sim.fer import SweepConfig, run_fer
from modules.sim.report import FerPoint, write_fer_csv, write_manifest
from modules.sim.rng import frame_rng

logger = logging.getLogger(__name__)


@dataclass
class ConstructResult:
    code: CodeSpec
    path: Path
    kernel_scores: dict = field(default_factory=dict)


@dataclass
class FerResult:
    points: list[FerPoint]
    csv_path: Path
    manifest_path: Path


@dataclass
class TimingResult:
    params: ArchParams
    reports: dict[str, TimingReport]
    resources: dict

    @property
    def speedup(self) -> Optional[float]:
        if "dm" in self.reports and "st" in self.reports:
            return speedup(self.reports["dm"], self.reports["st"])
        return None

    def to_dict(self) -> dict:
        data = {
            "params": self.params.to_dict(),
            "reports": {arch: report.to_dict() for arch, report in self.reports.items()},
            "resources": self.resources,
        }
        if self.speedup is not None:
            data["speedup"] = round(self.speedup, 4)
        return data


class RunController:
    """
    Runs construction, encoding, FER sweeps, timing reports and sorter checks.

    Example:
        controller = RunController()
        result = controller.construct(config, on_event=print)
        points = controller.run_fer(config).points
    """

    def __init__(self):
        self.run_id = uuid.uuid4().hex[:8]

    # ==================== Code files ====================

    def load_code(self, path: Optional[Path]) -> CodeSpec:
        """
        Read a frozen-set file.

        Raises:
            RunConfigError: If no path was given or the file does not exist
        """
        if path is None:
            raise RunConfigError("A code file is required (--code FILE)")
        if not Path(path).is_file():
            raise RunConfigError("Code file not found", file_path=Path(path))
        return read_frozen_set(path)

    def construct(self, config: RunConfig, on_event: EventCallback = None) -> ConstructResult:
        """Build a frozen set and write it to config.output."""
        if config.output is None:
            raise RunConfigError("construct needs --output FILE")
        ctx = field_for_order(config.q, config.poly)
        preset = get_preset(ctx.r)
        cfg = ConstructionConfig(
            design_ebn0=config.design_ebn0,
            trials=config.trials,
            seed=config.seed,
            workers=config.workers,
        )

        emit(on_event, make_state_event(RunState.RUNNING, self.run_id, "construct"))
        scores = {}
        if config.search_kernel:
            kernel, scores = search_kernel(config.N, ctx, cfg=cfg, rate=config.K / config.N or 0.5)
        else:
            kernel = KernelCoeffs(
                preset.alpha if config.alpha is None else config.alpha,
                preset.beta if config.beta is None else config.beta,
            )

        def progress(done: int, total: int) -> None:
            emit(on_event, make_progress_event("construct", done / total, f"{done}/{total} frames"))

        code = construct_frozen_set(config.N, config.K, ctx, kernel, cfg, progress=progress)
        path = write_frozen_set(code, config.output)
        emit(on_event, make_state_event(RunState.COMPLETED, self.run_id, str(path)))
        logger.info(f"Wrote {code.describe()} to {path}")
        return ConstructResult(code=code, path=path, kernel_scores=scores)

    def encode(self, config: RunConfig) -> tuple[np.ndarray, np.ndarray]:
        """Encode a given or random message with the code in config.code."""
        code = self.load_code(config.code)
        if config.message is not None:
            message = np.asarray(config.message, dtype=np.int64)
            if message.shape != (code.K,):
                raise RunConfigError(f"Message needs {code.K} symbols", f"got {message.size}")
            if np.any((message < 0) | (message >= code.q)):
                raise RunConfigError(f"Message symbols must lie in [0, {code.q})")
        elif config.random:
            message = code.random_message(frame_rng(config.seed, 0, 0))
        else:
            raise RunConfigError("encode needs --message or --random")
        return message, encode(code.place_message(message), code)

    # ==================== Simulation ====================

    def decoder_config(self, config: RunConfig) -> DecoderConfig:
        return DecoderConfig(
            kind=config.decoder,
            list_size=config.L,
            split_factor=config.M,
            skim=config.skim,
            quantizer=Quantizer() if config.quantized else None,
        )

    def run_fer(self, config: RunConfig, on_event: EventCallback = None) -> FerResult:
        """Sweep Eb/N0 and write <output>.csv plus <output>.json."""
        code = self.load_code(config.code)
        if config.output is None:
            raise RunConfigError("fer-sim needs --output PREFIX")
        sweep = SweepConfig(
            ebn0_db=tuple(config.ebn0),
            seed=config.seed,
            min_errors=config.min_errors,
            max_frames=config.max_frames,
            workers=config.workers,
        )
        decoder_config = self.decoder_config(config)

        emit(on_event, make_state_event(RunState.RUNNING, self.run_id, "fer-sim"))
        try:
            points = run_fer(code, decoder_config, sweep, progress=on_event)
        except Exception:
            emit(on_event, make_state_event(RunState.FAILED, self.run_id, "fer-sim"))
            raise

        prefix = Path(config.output)
        csv_path = write_fer_csv(points, prefix.with_suffix(".csv"))
        manifest = {
            "run": config.to_dict(),
            "code": code.describe(),
            "decoder": decoder_config.to_dict(),
        }
        manifest_path = write_manifest(manifest, prefix.with_suffix(".json"), points)
        emit(on_event, make_state_event(RunState.COMPLETED, self.run_id, str(csv_path)))
        return FerResult(points=points, csv_path=csv_path, manifest_path=manifest_path)

    # ==================== Hardware models ====================

    def timing(self, config: RunConfig) -> TimingResult:
        """Cycle breakdown for the requested architectures."""
        if config.code is not None:
            code = self.load_code(config.code)
            params = ArchParams(N=code.N, K=code.K, q=code.q, L=config.L, M=config.M,
                                L_s=config.skim, clock_hz=config.clock)
            frozen = code.frozen_mask
            levels = split_code(code, config.M).level_pattern
        else:
            params = ArchParams(N=config.N, K=config.K, q=config.q, L=config.L, M=config.M,
                                L_s=config.skim, clock_hz=config.clock)
            frozen = synthetic_frozen(config.N, config.K)
            levels = parse_levels(config.levels)

        reports, resources = {}, {}
        if config.arch in ("dm", "both"):
            reports["dm"] = dm_frame_latency(params, frozen)
            resources["dm"] = resource_summary(params, "dm").to_dict()
        if config.arch in ("st", "both"):
            reports["st"] = st_frame_latency(params, levels)
            resources["st"] = resource_summary(params, "st").to_dict()
        return TimingResult(params=params, reports=reports, resources=resources)

    def sorter_check(self, config: RunConfig) -> list[dict]:
        """Randomized sort2d validation for every requested width."""
        return [check_sorters(width, config.sorter_trials, config.seed) for width in config.W]
