"""
Code Specification
==================
(N, K) nonbinary polar code parameters and frozen-symbol layout.
"""

from dataclasses import dataclass
from typing import Mapping, Optional

import numpy as np

from modules.errors import CodeParameterError, FrozenValueError, validate_power_of_two
from modules.gf.field import GfContext
from modules.llrv.transform import KernelCoeffs


@dataclass(frozen=True, eq=False)
class CodeSpec:
    """
    Polar code over GF(q) with kernel [[1, 0], [alpha, beta]].

    Attributes:
        N: Code length in symbols (power of two, >= 2)
        K: Number of free (information) symbols
        field: Field context
        kernel: Kernel coefficients
        frozen_mask: Boolean array of length N, True where frozen
        frozen_values: Integer array of length N, zero at free indices
    """
    N: int
    K: int
    field: GfContext
    kernel: KernelCoeffs
    frozen_mask: np.ndarray
    frozen_values: np.ndarray

    def __post_init__(self):
        n = validate_power_of_two(self.N, "N")
        if n < 1:
            raise CodeParameterError(f"Code length N={self.N} must be at least 2")
        if not 0 <= self.K <= self.N:
            raise CodeParameterError(f"K={self.K} must lie in [0, N={self.N}]")
        self.kernel.validate(self.field)

        mask = np.asarray(self.frozen_mask, dtype=bool)
        values = np.asarray(self.frozen_values, dtype=np.int64)
        if mask.shape != (self.N,) or values.shape != (self.N,):
            raise CodeParameterError("Frozen layout must have one entry per symbol")
        if int(mask.sum()) != self.N - self.K:
            raise CodeParameterError(
                f"Expected {self.N - self.K} frozen symbols",
                f"got {int(mask.sum())}"
            )
        if np.any((values < 0) | (values >= self.field.q)):
            raise CodeParameterError(f"Frozen values must lie in GF({self.field.q})")
        values = np.where(mask, values, 0)
        mask.setflags(write=False)
        values.setflags(write=False)
        object.__setattr__(self, "frozen_mask", mask)
        object.__setattr__(self, "frozen_values", values)

    @classmethod
    def from_frozen(cls, N: int, field: GfContext, kernel: KernelCoeffs,
                    frozen: Mapping[int, int]) -> "CodeSpec":
        """Build a code from an {index: value} map of frozen symbols."""
        mask = np.zeros(N, dtype=bool)
        values = np.zeros(N, dtype=np.int64)
        for index, value in frozen.items():
            if not 0 <= index < N:
                raise CodeParameterError(f"Frozen index {index} is outside [0, {N})")
            mask[index] = True
            values[index] = value
        return cls(N=N, K=N - len(frozen), field=field, kernel=kernel,
                   frozen_mask=mask, frozen_values=values)

    # ==================== Derived properties ====================

    @property
    def n(self) -> int:
        return self.N.bit_length() - 1

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def rate(self) -> float:
        return self.K / self.N

    @property
    def free_indices(self) -> np.ndarray:
        return np.flatnonzero(~self.frozen_mask)

    @property
    def frozen_indices(self) -> np.ndarray:
        return np.flatnonzero(self.frozen_mask)

    # ==================== Message mapping ====================

    def place_message(self, message: np.ndarray) -> np.ndarray:
        """
        Scatter message symbols into the free positions of u.

        Accepts shape (K,) or a batch (B, K).
        """
        message = np.asarray(message, dtype=np.int64)
        if message.shape[-1] != self.K:
            raise CodeParameterError(f"Message must have K={self.K} symbols", f"got {message.shape[-1]}")
        u = np.broadcast_to(self.frozen_values, message.shape[:-1] + (self.N,)).copy()
        u[..., self.free_indices] = message
        return u

    def extract_message(self, u: np.ndarray) -> np.ndarray:
        return np.asarray(u)[..., self.free_indices]

    def check_frozen(self, u: np.ndarray) -> None:
        """
        Raises:
            FrozenValueError: At the first frozen index u disagrees with
        """
        rows = np.asarray(u).reshape(-1, self.N)
        bad = (rows != self.frozen_values) & self.frozen_mask
        if np.any(bad):
            row, index = (int(x) for x in np.argwhere(bad)[0])
            raise FrozenValueError(index, int(self.frozen_values[index]), int(rows[row, index]))

    def random_message(self, rng: np.random.Generator, batch: Optional[int] = None) -> np.ndarray:
        shape = (self.K,) if batch is None else (batch, self.K)
        return rng.integers(0, self.q, size=shape, dtype=np.int64)

    def describe(self) -> str:
        return (f"({self.N}, {self.K}) code over GF({self.q}), "
                f"alpha={self.kernel.alpha}, beta={self.kernel.beta}, poly=0x{self.field.poly:X}")
