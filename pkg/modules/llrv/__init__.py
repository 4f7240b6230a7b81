"""
LLRV Module
===========
Log-likelihood-vector transforms, trellis node functions and quantization.
"""

from .transform import (
    KernelCoeffs,
    check_llrv,
    normalize,
    wht,
    affine_permute,
    f_node,
    g_node,
    node_oracle,
    binary_boxplus,
    hard_decision,
)
from .quantize import Quantizer

__all__ = [
    "KernelCoeffs",
    "check_llrv",
    "normalize",
    "wht",
    "affine_permute",
    "f_node",
    "g_node",
    "node_oracle",
    "binary_boxplus",
    "hard_decision",
    "Quantizer",
]
