"""
Timing Model
============
Cycle-accurate frame latency of the direct-mapped list decoder and the
split-tree decoder, plus coded-bit throughput.

Latency terms follow the architecture description:
- every trellis activation costs one F-PE latency (2*log2(q) + 3)
- a direct-mapped free symbol pays a PM add, a qL-entry merge sort and an
  n-cycle PM/partial-sum update
- a split-tree level either bypasses reconciliation (1 cycle) or runs
  skim sort, filter, global PM add, global sort and an n_s-cycle update
"""

import logging
from dataclasses import asdict, dataclass, field
from typing import Optional, Sequence

import numpy as np

from config.settings import settings
from modules.errors import CodeParameterError, TimingParameterError, validate_power_of_two
from modules.hardware.sorter import merge_sort_latency, sort2d_cycles, sorter_width

logger = logging.getLogger(__name__)


@dataclass
class ArchParams:
    """
    Architecture parameters. Cost overrides left as None take their
    formula values; setting them to 1 gives the unit-time model.
    """
    N: int = 128
    K: int = 64
    q: int = 256
    L: int = 4
    M: int = 2
    L_s: int = 16
    clock_hz: float = field(default_factory=lambda: settings.clock_hz)
    pe_f_cycles: Optional[int] = None
    pe_g_cycles: int = field(default_factory=lambda: settings.pe_g_cycles)
    filter_overhead: int = field(default_factory=lambda: settings.filter_overhead)
    global_calc: int = 1
    pm_calc: int = 1
    pm_update_full: Optional[int] = None
    pm_update_sub: Optional[int] = None
    dm_sort_cycles: Optional[int] = None
    skim_sort_cycles: Optional[int] = None
    global_sort_cycles: Optional[int] = None
    bypass_cycles: int = 1

    def __post_init__(self):
        try:
            self.n = validate_power_of_two(self.N, "N")
            self.r = validate_power_of_two(self.q, "q")
        except CodeParameterError as e:
            raise TimingParameterError(e.message) from e
        if self.M not in (2, 4) or self.M >= self.N:
            raise TimingParameterError(f"Split factor M={self.M} is invalid for N={self.N}")
        if not 0 <= self.K <= self.N:
            raise TimingParameterError(f"K={self.K} outside [0, {self.N}]")
        if self.clock_hz <= 0:
            raise TimingParameterError("Clock frequency must be positive")
        for name in ("L", "L_s", "pe_g_cycles", "filter_overhead", "global_calc",
                     "pm_calc", "bypass_cycles"):
            if getattr(self, name) < 1:
                raise TimingParameterError(f"{name} must be positive", f"got {getattr(self, name)}")

        self.n_s = self.n - (self.M.bit_length() - 1)
        if self.pe_f_cycles is None:
            self.pe_f_cycles = 2 * self.r + 3
        if self.pm_update_full is None:
            self.pm_update_full = self.n
        if self.pm_update_sub is None:
            self.pm_update_sub = self.n_s
        if self.dm_sort_cycles is None:
            self.dm_sort_cycles = merge_sort_latency(max(2, self.q * self.L))
        if self.skim_sort_cycles is None:
            self.skim_sort_cycles = sort2d_cycles(self.skim_width)
        if self.global_sort_cycles is None:
            self.global_sort_cycles = sort2d_cycles(self.global_width)

    @property
    def skim_width(self) -> int:
        return sorter_width(self.q * self.L)

    @property
    def global_width(self) -> int:
        return sorter_width(self.L_s ** self.M)

    @property
    def sub_length(self) -> int:
        return self.N // self.M

    @property
    def reconcile_cycles(self) -> int:
        """Per reconciled level: skim sort + filter + global calc + global sort + update."""
        return (self.skim_sort_cycles + self.filter_overhead + self.global_calc
                + self.global_sort_cycles + self.pm_update_sub)

    @property
    def dm_free_cycles(self) -> int:
        return self.pm_calc + self.dm_sort_cycles + self.pm_update_full

    def to_dict(self) -> dict:
        data = asdict(self)
        data.update(n=self.n, n_s=self.n_s, skim_width=self.skim_width,
                    global_width=self.global_width)
        return data


@dataclass
class TimingReport:
    """
    Per-frame cycle breakdown. total_cycles is the sum of the five parts.
    """
    arch: str
    trellis_cycles: int
    pm_cycles: int
    sort_cycles: int
    update_cycles: int
    recon_cycles: int
    bits_per_frame: int
    clock_hz: float
    levels_bypassed: int = 0
    levels_reconciled: int = 0

    @property
    def total_cycles(self) -> int:
        return (self.trellis_cycles + self.pm_cycles + self.sort_cycles
                + self.update_cycles + self.recon_cycles)

    @property
    def throughput_mbps(self) -> float:
        return throughput(self)

    def to_dict(self) -> dict:
        data = asdict(self)
        data["total_cycles"] = self.total_cycles
        data["throughput_mbps"] = round(self.throughput_mbps, 4)
        return data


def dm_frame_latency(p: ArchParams, frozen_pattern: Sequence[bool]) -> TimingReport:
    """
    Latency of the direct-mapped decoder for one frame.

    Args:
        p: Architecture parameters
        frozen_pattern: One flag per symbol index, True when frozen

    Returns:
        TimingReport with arch "dm"
    """
    frozen = np.asarray(frozen_pattern, dtype=bool)
    if frozen.shape != (p.N,):
        raise TimingParameterError(f"Frozen pattern needs {p.N} flags", f"got {frozen.size}")
    free = int(np.count_nonzero(~frozen))
    report = TimingReport(
        arch="dm",
        trellis_cycles=(2 * p.N - 2) * p.pe_f_cycles,
        pm_cycles=p.N * p.pm_calc,
        sort_cycles=free * p.dm_sort_cycles,
        update_cycles=free * p.pm_update_full,
        recon_cycles=0,
        bits_per_frame=p.N * p.r,
        clock_hz=p.clock_hz,
    )
    logger.debug(f"DM latency: {report.total_cycles} cycles ({free} free symbols)")
    return report


def st_frame_latency(p: ArchParams, level_pattern: Sequence[bool]) -> TimingReport:
    """
    Latency of the split-tree decoder for one frame.

    Args:
        p: Architecture parameters
        level_pattern: One flag per level (N/M of them), True when every
            symbol of the level is frozen and reconciliation is bypassed

    Returns:
        TimingReport with arch "st"
    """
    bypass = np.asarray(level_pattern, dtype=bool)
    if bypass.shape != (p.sub_length,):
        raise TimingParameterError(
            f"Level pattern needs {p.sub_length} flags", f"got {bypass.size}"
        )
    bypassed = int(np.count_nonzero(bypass))
    reconciled = p.sub_length - bypassed
    report = TimingReport(
        arch="st",
        trellis_cycles=(2 * p.sub_length - 2) * p.pe_f_cycles,
        pm_cycles=reconciled * p.global_calc,
        sort_cycles=reconciled * (p.skim_sort_cycles + p.global_sort_cycles),
        update_cycles=reconciled * p.pm_update_sub,
        recon_cycles=reconciled * p.filter_overhead + bypassed * p.bypass_cycles,
        bits_per_frame=p.N * p.r,
        clock_hz=p.clock_hz,
        levels_bypassed=bypassed,
        levels_reconciled=reconciled,
    )
    logger.debug(
        f"ST latency: {report.total_cycles} cycles "
        f"({bypassed} bypassed, {reconciled} reconciled levels)"
    )
    return report


def throughput(report: TimingReport) -> float:
    """Coded-bit throughput N*r*clock/total in Mb/s."""
    if report.total_cycles <= 0:
        raise TimingParameterError("Report has no cycles")
    return report.bits_per_frame * report.clock_hz / report.total_cycles / 1e6


def speedup(dm: TimingReport, st: TimingReport) -> float:
    return dm.total_cycles / st.total_cycles


def synthetic_levels(bypassed: int, reconciled: int) -> list:
    """Level pattern with the bypassed levels first."""
    if bypassed < 0 or reconciled < 0:
        raise TimingParameterError("Level counts must be non-negative")
    return [True] * bypassed + [False] * reconciled


def parse_levels(text: str) -> list:
    """
    Parse a "bypassed/reconciled" pair such as "19/45".

    Raises:
        TimingParameterError: If the text is not two integers separated by '/'
    """
    try:
        left, right = text.split("/")
        return synthetic_levels(int(left), int(right))
    except ValueError as e:
        raise TimingParameterError(f"Bad level pattern '{text}'", "expected BYPASSED/RECONCILED") from e


def synthetic_frozen(N: int, K: int) -> list:
    """Frozen flags with the first N-K indices frozen."""
    return [i < N - K for i in range(N)]
