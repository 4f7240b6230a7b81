"""
Code Module
===========
Code definitions, encoding, construction and split-tree decomposition.
"""

from .spec import CodeSpec
from .polar import encode, encode_dense, butterfly_encode, kronecker_power
from .split import SplitSpec, LevelConstraint, split_code
from .frozen_io import read_frozen_set, write_frozen_set, parse_frozen_set, format_frozen_set
from .construction import ConstructionConfig, construct_frozen_set
from .kernel_search import search_kernel, polarization_proxy

__all__ = [
    "CodeSpec",
    "encode",
    "encode_dense",
    "butterfly_encode",
    "kronecker_power",
    "SplitSpec",
    "LevelConstraint",
    "split_code",
    "read_frozen_set",
    "write_frozen_set",
    "parse_frozen_set",
    "format_frozen_set",
    "ConstructionConfig",
    "construct_frozen_set",
    "search_kernel",
    "polarization_proxy",
]
