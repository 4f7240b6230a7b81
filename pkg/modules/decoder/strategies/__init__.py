"""
Decoder Strategies
==================
Pluggable frame decoders.
"""

from .base import DecoderStrategy, DecoderConfig, DecodeResult
from .scl import SCDecoder, SCLDecoder
from .split_tree import SplitTreeDecoder

__all__ = [
    "DecoderStrategy",
    "DecoderConfig",
    "DecodeResult",
    "SCDecoder",
    "SCLDecoder",
    "SplitTreeDecoder",
]
