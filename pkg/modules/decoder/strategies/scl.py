"""
SC / SCL Decoder Strategies
===========================
Full-trellis decoders.
"""

import numpy as np

from modules.decoder.scl import sc_decode, scl_decode
from modules.decoder.strategies.base import DecodeResult, DecoderStrategy


class SCDecoder(DecoderStrategy):
    """Successive-cancellation decoder."""

    @property
    def name(self) -> str:
        return "sc"

    @property
    def display_name(self) -> str:
        return "SC"

    def decode(self, channel: np.ndarray) -> DecodeResult:
        result = sc_decode(channel, self.code, self.config.quantizer)
        return DecodeResult(message=result.message, u=result.u, pm=result.best_pm)


class SCLDecoder(DecoderStrategy):
    """Successive-cancellation list decoder."""

    @property
    def name(self) -> str:
        return "scl"

    @property
    def display_name(self) -> str:
        return f"NBSCL L={self.config.list_size}"

    def decode(self, channel: np.ndarray) -> DecodeResult:
        result = scl_decode(channel, self.code, self.config.list_size, self.config.quantizer)
        return DecodeResult(message=result.message, u=result.u, pm=result.best_pm)
