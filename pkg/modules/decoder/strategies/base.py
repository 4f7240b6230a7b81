"""
Decoder Strategy Base Interface
===============================
Abstract base class for frame decoders.
Lets the FER harness and CLI drive SC, SCL and split-tree decoding uniformly.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Literal, Optional

import numpy as np

from config.settings import settings
from modules.code.spec import CodeSpec
from modules.llrv.quantize import Quantizer

DecoderKind = Literal["sc", "scl", "s-nbscl"]


@dataclass(frozen=True)
class DecoderConfig:
    """Configuration shared by all decoders."""
    kind: DecoderKind = "scl"
    list_size: int = settings.list_size
    split_factor: int = settings.split_factor
    skim: int = settings.skim
    assembly_budget: int = settings.assembly_budget
    quantizer: Optional[Quantizer] = None
    bypass_frozen_levels: bool = True
    debug_checks: bool = False

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "list_size": self.list_size,
            "split_factor": self.split_factor,
            "skim": self.skim,
            "assembly_budget": self.assembly_budget,
            "quantized": self.quantizer is not None,
            "bypass_frozen_levels": self.bypass_frozen_levels,
            "debug_checks": self.debug_checks,
        }


@dataclass
class DecodeResult:
    """Decoder output for one frame."""
    message: np.ndarray
    u: np.ndarray
    pm: float
    success: bool = True
    stats: dict = field(default_factory=dict)


class DecoderStrategy(ABC):
    """
    Abstract base class for frame decoders.

    Implementations:
        - SCDecoder: successive cancellation
        - SCLDecoder: successive-cancellation list
        - SplitTreeDecoder: M sub-decoders with skimming and reconciliation
    """

    def __init__(self, code: CodeSpec, config: Optional[DecoderConfig] = None):
        """
        Initialize the decoder.

        Args:
            code: Code to decode
            config: Decoder configuration (uses defaults if None)
        """
        self.code = code
        self.config = config or DecoderConfig()

    # ==================== Properties ====================

    @property
    @abstractmethod
    def name(self) -> str:
        """
        Decoder identifier.

        Returns:
            Short name like 'sc', 'scl', 's-nbscl'
        """
        pass

    @property
    @abstractmethod
    def display_name(self) -> str:
        """
        Human-readable name including the list parameters.
        """
        pass

    # ==================== Decoding ====================

    @abstractmethod
    def decode(self, channel: np.ndarray) -> DecodeResult:
        """
        Decode one frame.

        Args:
            channel: Channel LLRVs, shape (N, q)

        Returns:
            DecodeResult; success is False when the frame could not be decoded
        """
        pass

    def decode_batch(self, channels: np.ndarray) -> list[DecodeResult]:
        """
        Decode several frames.

        Default implementation processes sequentially.
        """
        return [self.decode(channel) for channel in channels]

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.display_name}, {self.code.describe()})"
