"""
Resource Counts
===============
Structural counts of processing elements, adders and sorters for the two
decoder architectures.
"""

from dataclasses import asdict, dataclass

from modules.hardware.timing import ArchParams


def pe_f_breakdown(q: int) -> dict:
    """Pipeline stages of an F processing element; they sum to 2*log2(q) + 3."""
    r = q.bit_length() - 1
    return {
        "permutation": 2,
        "hadamard": r,
        "product": 1,
        "inverse_hadamard": r,
    }


@dataclass
class ResourceSummary:
    arch: str
    stages: int
    pes_per_stage: list
    pes_total: int
    hadamard_engines: int
    pm_adders: int
    global_adders: int
    sorter_widths: list
    pe_f_stages: dict

    def to_dict(self) -> dict:
        return asdict(self)


def resource_summary(p: ArchParams, arch: str = "st") -> ResourceSummary:
    """
    Count hardware resources of one decoder.

    Args:
        p: Architecture parameters
        arch: "dm" for the direct-mapped decoder, "st" for the split tree

    Returns:
        ResourceSummary; for "st" the PE and PM-adder counts are totals
        over all M sub-decoders
    """
    if arch == "dm":
        stages, copies = p.n, 1
        widths = []
        global_adders = 0
    else:
        stages, copies = p.n_s, p.M
        widths = [p.skim_width, p.global_width]
        global_adders = p.L_s ** p.M

    per_stage = [2 ** (stages - 1 - i) for i in range(stages)]
    pes = sum(per_stage) * copies
    return ResourceSummary(
        arch=arch,
        stages=stages,
        pes_per_stage=per_stage,
        pes_total=pes,
        # one q-input engine per PE, each built from two q/2-input halves
        hadamard_engines=pes,
        pm_adders=p.q * p.L * copies,
        global_adders=global_adders,
        sorter_widths=widths,
        pe_f_stages=pe_f_breakdown(p.q),
    )
