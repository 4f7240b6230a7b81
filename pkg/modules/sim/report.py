"""
FER Reporting
=============
Confidence intervals, CSV/manifest output and curve comparison.
"""

import csv
import hashlib
import json
import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence, Union

from modules import __version__
from modules.errors import SimulationConfigError

logger = logging.getLogger(__name__)

CSV_HEADER = ("ebn0_db", "frames", "errors", "fer", "ci_lo", "ci_hi")


def wilson_interval(errors: int, frames: int, z: float = 1.96) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion; (0, 1) when frames is 0."""
    if frames == 0:
        return 0.0, 1.0
    p = errors / frames
    z2 = z * z
    denom = 1.0 + z2 / frames
    center = (p + z2 / (2 * frames)) / denom
    half = z * math.sqrt(p * (1 - p) / frames + z2 / (4 * frames * frames)) / denom
    return max(0.0, center - half), min(1.0, center + half)


@dataclass
class FerPoint:
    """FER measurement at one Eb/N0."""
    ebn0_db: float
    frames: int
    errors: int
    failures: int = 0

    @property
    def fer(self) -> float:
        return self.errors / self.frames if self.frames else 0.0

    @property
    def ci95(self) -> tuple[float, float]:
        return wilson_interval(self.errors, self.frames)

    def to_row(self) -> list[str]:
        lo, hi = self.ci95
        return [f"{self.ebn0_db:.6g}", str(self.frames), str(self.errors),
                f"{self.fer:.6g}", f"{lo:.6g}", f"{hi:.6g}"]

    def to_dict(self) -> dict:
        lo, hi = self.ci95
        return {
            "ebn0_db": self.ebn0_db,
            "frames": self.frames,
            "errors": self.errors,
            "failures": self.failures,
            "fer": self.fer,
            "ci_lo": lo,
            "ci_hi": hi,
        }


def write_fer_csv(points: Sequence[FerPoint], path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for point in points:
            writer.writerow(point.to_row())
    logger.info(f"Wrote {len(points)} FER points to {path}")
    return path


def config_digest(config: dict) -> str:
    canonical = json.dumps(config, sort_keys=True, separators=(",", ":"), default=str)
    return hashlib.sha1(canonical.encode("utf-8")).hexdigest()


def write_manifest(config: dict, path: Union[str, Path], points: Sequence[FerPoint] = ()) -> Path:
    """JSON manifest with the full run configuration, its digest and the version."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    manifest = {
        "version": f"nbpolar {__version__}",
        "config": config,
        "config_sha1": config_digest(config),
        "points": [p.to_dict() for p in points],
    }
    path.write_text(json.dumps(manifest, indent=2, sort_keys=True, default=str) + "\n")
    return path


def _crossing(points: Sequence[FerPoint], target: float) -> float:
    ordered = sorted(points, key=lambda p: p.ebn0_db)
    for a, b in zip(ordered, ordered[1:]):
        if a.fer > 0 and b.fer > 0 and a.fer >= target >= b.fer:
            if a.fer == b.fer:
                return a.ebn0_db
            t = (math.log10(a.fer) - math.log10(target)) / (math.log10(a.fer) - math.log10(b.fer))
            return a.ebn0_db + t * (b.ebn0_db - a.ebn0_db)
    raise SimulationConfigError(f"Curve does not bracket FER {target:g}")


def snr_gap_at_fer(curve_a: Sequence[FerPoint], curve_b: Sequence[FerPoint], target_fer: float) -> float:
    """
    Eb/N0 gap in dB at a target FER, interpolating Eb/N0 against log10(FER).

    Positive when curve_b needs more Eb/N0 than curve_a.

    Raises:
        SimulationConfigError: If either curve does not bracket the target
    """
    return _crossing(curve_b, target_fer) - _crossing(curve_a, target_fer)


def fer_is_monotone(points: Sequence[FerPoint]) -> bool:
    """True when FER never rises significantly (beyond the 95% intervals) as Eb/N0 grows."""
    ordered = sorted(points, key=lambda p: p.ebn0_db)
    return all(b.ci95[0] <= a.ci95[1] for a, b in zip(ordered, ordered[1:]))
