"""
BPSK / AWGN Channel
===================
Bit mapping of GF(2^r) symbols, Gaussian noise and channel LLRVs.

Symbols are sent as r antipodal values, least significant bit first,
bit 0 -> +1 and bit 1 -> -1.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from config.settings import settings
from modules.errors import SimulationConfigError
from modules.llrv.transform import normalize


@dataclass(frozen=True)
class ChannelConfig:
    """
    Attributes:
        ebn0_db: Energy per information bit over noise density, in dB
        rate: Code rate K/N
        r: Bits per symbol
        seed: Base seed
    """
    ebn0_db: float
    rate: float
    r: int
    seed: int = 0

    def __post_init__(self):
        if not 0 < self.rate <= 1:
            raise SimulationConfigError(f"Code rate {self.rate} must lie in (0, 1]")

    @property
    def sigma2(self) -> float:
        """Noise variance per real dimension for unit-energy bits."""
        return 1.0 / (2.0 * self.rate * 10.0 ** (self.ebn0_db / 10.0))


@lru_cache(maxsize=None)
def constellation(r: int) -> np.ndarray:
    """Antipodal images of every symbol, shape (2^r, r)."""
    symbols = np.arange(1 << r)
    bits = (symbols[:, None] >> np.arange(r)) & 1
    points = 1.0 - 2.0 * bits
    points.setflags(write=False)
    return points


def modulate(c: np.ndarray, r: int) -> np.ndarray:
    """Map symbols (...,) to antipodal values (..., r)."""
    return constellation(r)[np.asarray(c, dtype=np.int64)]


def transmit(c: np.ndarray, cfg: ChannelConfig, rng: np.random.Generator) -> np.ndarray:
    """Modulate and add white Gaussian noise of variance sigma2."""
    x = modulate(c, cfg.r)
    return x + np.sqrt(cfg.sigma2) * rng.standard_normal(x.shape)


def channel_llrv(y: np.ndarray, sigma2: float, r: int, clamp: float = None) -> np.ndarray:
    """
    Symbol log-likelihoods from received values y (..., r).

    log p(y | theta) = <y, s(theta)> / sigma2 + const, normalized to max 0.
    """
    y = np.asarray(y, dtype=np.float64)
    return normalize(y @ constellation(r).T / sigma2, clamp)


def noiseless_llrv(c: np.ndarray, q: int, clamp: float = None) -> np.ndarray:
    """Certainty LLRVs: 0 at the sent symbol, -clamp elsewhere."""
    clamp = settings.clamp if clamp is None else clamp
    c = np.asarray(c, dtype=np.int64)
    out = np.full(c.shape + (q,), -clamp)
    np.put_along_axis(out, c[..., None], 0.0, axis=-1)
    return out
