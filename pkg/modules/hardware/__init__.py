"""
Hardware Models
===============
Sorter models, frame latency and resource counts of the decoder architectures.
"""

from .sorter import (
    SORT2D_PHASES,
    SortReport,
    bitonic_sort,
    check_sorters,
    merge_sort_latency,
    shear_sort_sorts,
    sort2d,
    sort2d_cycles,
    sorter_width,
    to_snake,
)
from .timing import (
    ArchParams,
    TimingReport,
    dm_frame_latency,
    parse_levels,
    speedup,
    st_frame_latency,
    synthetic_frozen,
    synthetic_levels,
    throughput,
)
from .resources import ResourceSummary, pe_f_breakdown, resource_summary

__all__ = [
    "SORT2D_PHASES",
    "SortReport",
    "bitonic_sort",
    "check_sorters",
    "merge_sort_latency",
    "shear_sort_sorts",
    "sort2d",
    "sort2d_cycles",
    "sorter_width",
    "to_snake",
    "ArchParams",
    "TimingReport",
    "dm_frame_latency",
    "parse_levels",
    "speedup",
    "st_frame_latency",
    "synthetic_frozen",
    "synthetic_levels",
    "throughput",
    "ResourceSummary",
    "pe_f_breakdown",
    "resource_summary",
]
