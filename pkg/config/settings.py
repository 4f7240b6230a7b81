"""
Application Settings
====================
Central configuration for the nonbinary polar codec.
"""

from pathlib import Path
from dataclasses import dataclass, field
from typing import Literal


@dataclass
class Settings:
    """Application configuration settings."""

    # Paths
    base_dir: Path = field(default_factory=lambda: Path(__file__).parent.parent)
    output_dir: Path = field(default_factory=lambda: Path("results"))

    # Field
    default_degree: int = 8
    default_poly: int = 0x11D

    # LLRV arithmetic
    clamp: float = 80.0
    prob_floor: float = 1e-30
    llr_bits: int = 8
    pm_bits: int = 16
    llr_step: float = 0.5

    # Construction
    design_ebn0: float = 3.5
    construction_trials: int = 1000
    construction_seed: int = 0
    construction_batch: int = 100

    # Decoding
    decoder: Literal["sc", "scl", "s-nbscl"] = "scl"
    list_size: int = 4
    split_factor: int = 2
    skim: int = 16
    assembly_budget: int = 65536

    # Simulation
    min_errors: int = 100
    max_frames: int = 1_000_000
    batch_frames: int = 32
    max_workers: int = 1

    # Hardware model
    clock_hz: float = 500e6
    pe_g_cycles: int = 5
    filter_overhead: int = 34


# Global settings instance
settings = Settings()
