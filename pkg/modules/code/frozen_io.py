"""
Frozen-Set Files
================
Text serialization of a code's frozen layout.

Format::

    N K q alpha beta poly
    index value
    ...

All fields are decimal except poly, which is written in hex (read with any
integer prefix).
"""

import logging
from pathlib import Path
from typing import Union

from modules.code.spec import CodeSpec
from modules.errors import FrozenFileFormatError, PolarCodecError
from modules.gf.field import field_for_order
from modules.llrv.transform import KernelCoeffs

logger = logging.getLogger(__name__)


def format_frozen_set(code: CodeSpec) -> str:
    lines = [f"{code.N} {code.K} {code.q} {code.kernel.alpha} {code.kernel.beta} 0x{code.field.poly:X}"]
    for index in code.frozen_indices:
        lines.append(f"{int(index)} {int(code.frozen_values[index])}")
    return "\n".join(lines) + "\n"


def write_frozen_set(code: CodeSpec, path: Union[str, Path]) -> Path:
    """Write a frozen-set file, creating parent directories."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(format_frozen_set(code))
    logger.info(f"Wrote frozen set for {code.describe()} to {path}")
    return path


def parse_frozen_set(text: str, source: Path = None) -> CodeSpec:
    """
    Parse frozen-set text.

    Raises:
        FrozenFileFormatError: On malformed lines or inconsistent counts
    """
    rows = [(number, line.split()) for number, line in enumerate(text.splitlines(), start=1) if line.strip()]
    if not rows:
        raise FrozenFileFormatError("Empty frozen-set file", source)

    number, header = rows[0]
    if len(header) != 6:
        raise FrozenFileFormatError("Header must be 'N K q alpha beta poly'", source, number)
    try:
        N, K, q, alpha, beta = (int(tok) for tok in header[:5])
        poly = int(header[5], 0)
    except ValueError:
        raise FrozenFileFormatError("Header fields must be integers", source, number)

    frozen = {}
    for number, tokens in rows[1:]:
        if len(tokens) != 2:
            raise FrozenFileFormatError("Expected 'index value'", source, number)
        try:
            index, value = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise FrozenFileFormatError("Index and value must be integers", source, number)
        if index in frozen:
            raise FrozenFileFormatError(f"Duplicate frozen index {index}", source, number)
        frozen[index] = value

    if len(frozen) != N - K:
        raise FrozenFileFormatError(f"Header declares {N - K} frozen symbols, found {len(frozen)}", source)

    try:
        field = field_for_order(q, poly)
        return CodeSpec.from_frozen(N, field, KernelCoeffs(alpha, beta), frozen)
    except PolarCodecError as e:
        raise FrozenFileFormatError(e.message, source) from e


def read_frozen_set(path: Union[str, Path]) -> CodeSpec:
    path = Path(path)
    if not path.exists():
        raise FrozenFileFormatError("Frozen-set file not found", path)
    return parse_frozen_set(path.read_text(), path)
