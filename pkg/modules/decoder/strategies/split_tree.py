"""
Split-Tree Decoder Strategy
===========================
"""

import logging
from typing import Optional

import numpy as np

from modules.code.spec import CodeSpec
from modules.code.split import split_code
from modules.decoder.split_decoder import SkimConfig, s_nbscl_decode
from modules.decoder.strategies.base import DecodeResult, DecoderConfig, DecoderStrategy
from modules.errors import FrameDecodeFailure

logger = logging.getLogger(__name__)


class SplitTreeDecoder(DecoderStrategy):
    """
    M parallel sub-decoders with sub-path skimming.

    A frame whose reconciliation finds no valid global path is reported
    with success=False and counts as a frame error.
    """

    def __init__(self, code: CodeSpec, config: Optional[DecoderConfig] = None):
        super().__init__(code, config)
        self.split = split_code(code, self.config.split_factor)
        self.skim_config = SkimConfig(
            list_size=self.config.list_size,
            skim=self.config.skim,
            M=self.config.split_factor,
            assembly_budget=self.config.assembly_budget,
        ).resolved(code.q)

    @property
    def name(self) -> str:
        return "s-nbscl"

    @property
    def display_name(self) -> str:
        c = self.skim_config
        return f"S-NBSCL M={c.M} L={c.list_size} Ls={c.skim}"

    def decode(self, channel: np.ndarray) -> DecodeResult:
        try:
            result = s_nbscl_decode(
                channel,
                self.split,
                self.skim_config,
                quantizer=self.config.quantizer,
                bypass=self.config.bypass_frozen_levels,
                debug_checks=self.config.debug_checks,
            )
        except FrameDecodeFailure as e:
            logger.debug(f"Frame failure: {e}")
            return DecodeResult(
                message=np.full(self.code.K, -1, dtype=np.int64),
                u=np.full(self.code.N, -1, dtype=np.int64),
                pm=float("-inf"),
                success=False,
                stats={"failure": str(e)},
            )
        return DecodeResult(message=result.message, u=result.u, pm=result.best_pm, stats=result.stats)
