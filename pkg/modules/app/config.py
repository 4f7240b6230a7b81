"""
Run Configuration
=================
Configuration for one command-line run.

Values come from three layers: built-in defaults, an optional key=value
config file, and command-line flags, with later layers taking precedence.
"""

from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Any, Optional, Union

from dotenv import dotenv_values

from config.fields import list_degrees
from config.settings import settings
from modules.errors import RunConfigError

DECODER_KINDS = ("sc", "scl", "s-nbscl")
ARCH_KINDS = ("dm", "st", "both")
REPORT_FORMATS = ("json", "csv", "table")


def _to_bool(value: Any) -> bool:
    if isinstance(value, bool):
        return value
    text = str(value).strip().lower()
    if text in ("1", "true", "yes", "on"):
        return True
    if text in ("0", "false", "no", "off", ""):
        return False
    raise ValueError(f"not a boolean: {value!r}")


def _to_floats(value: Any) -> tuple:
    if isinstance(value, str):
        return tuple(float(tok) for tok in value.split(",") if tok.strip())
    return tuple(float(v) for v in value)


def _to_ints(value: Any) -> tuple:
    if isinstance(value, str):
        return tuple(int(tok) for tok in value.split(",") if tok.strip())
    return tuple(int(v) for v in value)


def _to_int(value: Any) -> int:
    # Accepts hex masks such as 0x11D
    return int(value, 0) if isinstance(value, str) else int(value)


@dataclass
class RunConfig:
    """
    Settings for one CLI run.

    Attributes:
        command: Subcommand name
        code: Frozen-set file to read (encode, fer-sim, timing-report)
        N, K, q, poly, alpha, beta: Code parameters for construct / timing-report
        decoder: One of sc, scl, s-nbscl
        L, M, Ls: List size, split factor, skim size (Ls only for s-nbscl)
        ebn0: Eb/N0 sweep points in dB
        seed: Seed for construction, message draws and noise
        quantized: Run decoders in fixed-point mode
        output: Output file or prefix
    """

    command: str = ""
    code: Optional[Path] = None
    output: Optional[Path] = None

    # Code
    N: int = 128
    K: int = 64
    q: int = 256
    poly: Optional[int] = None
    alpha: Optional[int] = None
    beta: Optional[int] = None
    search_kernel: bool = False

    # Construction
    design_ebn0: float = settings.design_ebn0
    trials: int = settings.construction_trials

    # Decoding
    decoder: str = settings.decoder
    L: int = settings.list_size
    M: int = settings.split_factor
    Ls: Optional[int] = None
    quantized: bool = False

    # Simulation
    ebn0: tuple = (1.0, 1.5, 2.0)
    seed: int = 0
    min_errors: int = settings.min_errors
    max_frames: int = settings.max_frames
    workers: int = settings.max_workers

    # Encode
    message: Optional[tuple] = None
    random: bool = False

    # Timing report
    arch: str = "both"
    levels: str = "19/45"
    clock: float = settings.clock_hz
    format: str = "table"

    # Sorter check
    W: tuple = (16, 32)
    sorter_trials: int = 1000

    config_file: Optional[Path] = field(default=None, compare=False)

    _CONVERTERS = {
        "code": Path, "output": Path, "config_file": Path,
        "N": int, "K": int, "q": int, "poly": _to_int, "alpha": _to_int, "beta": _to_int,
        "search_kernel": _to_bool, "design_ebn0": float, "trials": int,
        "decoder": str, "L": int, "M": int, "Ls": int, "quantized": _to_bool,
        "ebn0": _to_floats, "seed": int, "min_errors": int, "max_frames": int, "workers": int,
        "message": _to_ints, "random": _to_bool,
        "arch": str, "levels": str, "clock": float, "format": str,
        "W": _to_ints, "sorter_trials": int, "command": str,
    }

    @classmethod
    def from_dict(cls, config_dict: dict, source: Optional[Path] = None) -> "RunConfig":
        """
        Create config from a dictionary of raw values.

        Args:
            config_dict: Mapping of field names to values (strings allowed)
            source: File the values came from, for error messages

        Returns:
            RunConfig instance

        Raises:
            RunConfigError: On unknown keys or values that do not convert
        """
        return cls().merged(config_dict, source)

    def merged(self, overrides: dict, source: Optional[Path] = None) -> "RunConfig":
        """Return a copy with every non-None override applied."""
        known = {f.name for f in fields(self)}
        processed = {}
        for key, value in overrides.items():
            if value is None:
                continue
            if key not in known:
                raise RunConfigError(f"Unknown setting '{key}'", file_path=source)
            try:
                processed[key] = self._CONVERTERS.get(key, lambda v: v)(value)
            except (TypeError, ValueError) as e:
                raise RunConfigError(f"Bad value for '{key}'", str(e), file_path=source) from e
        return replace(self, **processed)

    def to_dict(self) -> dict:
        """JSON-ready dictionary of every setting."""
        out = {}
        for f in fields(self):
            value = getattr(self, f.name)
            if isinstance(value, Path):
                value = str(value)
            elif isinstance(value, tuple):
                value = list(value)
            out[f.name] = value
        return out

    def validate(self) -> "RunConfig":
        """
        Check the settings are mutually consistent.

        Raises:
            RunConfigError: On any inconsistency
        """
        if self.decoder not in DECODER_KINDS:
            raise RunConfigError(f"Unknown decoder '{self.decoder}'", f"choose from {', '.join(DECODER_KINDS)}")
        if self.arch not in ARCH_KINDS:
            raise RunConfigError(f"Unknown architecture '{self.arch}'")
        if self.format not in REPORT_FORMATS:
            raise RunConfigError(f"Unknown report format '{self.format}'")
        if self.M not in (2, 4):
            raise RunConfigError(f"Split factor M={self.M} must be 2 or 4")
        if self.L < 1:
            raise RunConfigError(f"List size L={self.L} must be positive")
        if self.Ls is not None:
            if self.command == "fer-sim" and self.decoder != "s-nbscl":
                raise RunConfigError("--Ls only applies to the s-nbscl decoder")
            if self.Ls < self.L:
                raise RunConfigError(f"Skim size Ls={self.Ls} is smaller than L={self.L}")
        if self.q not in {1 << r for r in list_degrees()}:
            raise RunConfigError(f"Field order q={self.q} must be a power of two in [2, 256]")
        if not 0 <= self.K <= self.N:
            raise RunConfigError(f"K={self.K} must lie in [0, N={self.N}]")
        if self.workers < 1:
            raise RunConfigError(f"Worker count {self.workers} must be positive")
        for width in self.W:
            if width < 2 or width & (width - 1):
                raise RunConfigError(f"Sorter width W={width} must be a power of two >= 2")
        if self.sorter_trials < 1:
            raise RunConfigError(f"Sorter trials {self.sorter_trials} must be positive")
        if self.search_kernel and (self.alpha is not None or self.beta is not None):
            raise RunConfigError("--search-kernel cannot be combined with --alpha/--beta")
        return self

    @property
    def skim(self) -> int:
        return self.Ls if self.Ls is not None else settings.skim


def load_config_file(path: Union[str, Path]) -> dict:
    """
    Read a key=value config file.

    Keys are matched case-sensitively after turning '-' into '_', so both
    `min-errors=50` and `min_errors=50` work.

    Raises:
        RunConfigError: If the file does not exist
    """
    path = Path(path)
    if not path.is_file():
        raise RunConfigError("Config file not found", file_path=path)
    raw = dotenv_values(path)
    return {key.strip().replace("-", "_"): value for key, value in raw.items()}


def resolve_run_config(flags: dict, config_file: Optional[Union[str, Path]] = None) -> RunConfig:
    """
    Build a validated RunConfig: defaults, then the config file, then flags.

    Args:
        flags: Parsed command-line values; None means "not given"
        config_file: Optional key=value file

    Returns:
        Validated RunConfig
    """
    config = RunConfig()
    if config_file is not None:
        path = Path(config_file)
        config = config.merged(load_config_file(path), source=path)
        config = replace(config, config_file=path)
    return config.merged(flags).validate()
