"""
Fixed-Point Quantization
========================
8-bit LLRV and 16-bit path-metric emulation with saturating arithmetic.
"""

from dataclasses import dataclass

import numpy as np

from config.settings import settings
from modules.errors import FieldParameterError


@dataclass(frozen=True)
class Quantizer:
    """Fixed-point grid for LLRVs and path metrics."""
    llr_bits: int = settings.llr_bits
    pm_bits: int = settings.pm_bits
    llr_step: float = settings.llr_step

    def __post_init__(self):
        if self.llr_bits < 2 or self.pm_bits < 2:
            raise FieldParameterError("Quantizer needs at least 2 bits", f"llr={self.llr_bits}, pm={self.pm_bits}")
        if self.llr_step <= 0:
            raise FieldParameterError(f"Quantizer step {self.llr_step} must be positive")

    @property
    def llr_floor(self) -> float:
        return -(2 ** (self.llr_bits - 1)) * self.llr_step

    @property
    def pm_floor(self) -> float:
        return -(2 ** (self.pm_bits - 1)) * self.llr_step

    def quantize_llrv(self, L: np.ndarray) -> np.ndarray:
        """Round to the LSB grid and saturate to [llr_floor, 0]."""
        grid = np.round(np.asarray(L, dtype=np.float64) / self.llr_step) * self.llr_step
        return np.clip(grid, self.llr_floor, 0.0)

    def quantize_increment(self, x: np.ndarray) -> np.ndarray:
        return np.round(np.asarray(x, dtype=np.float64) / self.llr_step) * self.llr_step

    def saturate_pm(self, pm: np.ndarray) -> np.ndarray:
        """
        Renormalize metrics against the best path and saturate.

        Ordering among unsaturated metrics is unchanged.
        """
        pm = np.asarray(pm, dtype=np.float64)
        if pm.size == 0:
            return pm
        return np.maximum(pm - pm.max(), self.pm_floor)
