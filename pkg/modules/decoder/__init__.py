"""
Decoder Module
==============
Trellis engine, SC/SCL and split-tree list decoders.
"""

from .trellis import Trellis
from .scl import ListDecodeResult, extend_and_select, scl_decode, sc_decode
from .split_decoder import (
    SkimConfig,
    skim_subpaths,
    skim_pivots,
    assemble_globals,
    select_globals,
    distribute_paths,
    s_nbscl_decode,
)
from .joint_reference import joint_reference_decode
from .strategies import DecoderStrategy, DecoderConfig, DecodeResult
from .factory import DecoderFactory, create_decoder

__all__ = [
    "Trellis",
    "ListDecodeResult",
    "extend_and_select",
    "scl_decode",
    "sc_decode",
    "SkimConfig",
    "skim_subpaths",
    "skim_pivots",
    "assemble_globals",
    "select_globals",
    "distribute_paths",
    "s_nbscl_decode",
    "joint_reference_decode",
    "DecoderStrategy",
    "DecoderConfig",
    "DecodeResult",
    "DecoderFactory",
    "create_decoder",
]
