"""
Error Handling Module
=====================
Custom exceptions and error handling utilities for the nonbinary polar codec.
Provides consistent error codes and messages for edge cases.
"""

from enum import Enum
from dataclasses import dataclass
from typing import Optional
from pathlib import Path


class ErrorCode(Enum):
    """Error codes for the nonbinary polar codec."""
    # Field arithmetic errors (E001-E099)
    E001 = "Reducible field polynomial"
    E002 = "Invalid field parameters"
    E003 = "Field domain error"

    # LLRV errors (E100-E199)
    E100 = "LLRV shape mismatch"
    E101 = "LLRV has no finite entry"
    E102 = "Non-bijective permutation"

    # Code errors (E200-E299)
    E200 = "Invalid code parameters"
    E201 = "Frozen value violated"
    E202 = "Construction budget too small"
    E203 = "Unsupported split factor"
    E204 = "Frozen-set file malformed"

    # Decoder errors (E300-E399)
    E300 = "Out-of-order decode request"
    E301 = "Empty path list"
    E302 = "Frame decode failure"
    E303 = "Constraint violated by survivor"

    # Hardware model errors (E400-E499)
    E400 = "Invalid sorter input"
    E401 = "Sorter output not sorted"
    E402 = "Invalid architecture parameters"

    # Simulation and configuration errors (E500-E599)
    E500 = "Invalid simulation configuration"
    E501 = "Invalid run configuration"
    E502 = "Simulation worker failed"


@dataclass
class PolarCodecError(Exception):
    """Base exception for the polar codec with error codes."""
    code: ErrorCode
    message: str
    details: Optional[str] = None
    file_path: Optional[Path] = None

    def __str__(self) -> str:
        base = f"[{self.code.name}] {self.code.value}: {self.message}"
        if self.details:
            base += f" ({self.details})"
        if self.file_path:
            base += f" - File: {self.file_path}"
        return base


class ReducibleFieldPolynomialError(PolarCodecError):
    """Error when the reduction polynomial factors over GF(2)."""
    def __init__(self, poly: int, factor: int = None):
        super().__init__(
            code=ErrorCode.E001,
            message=f"Polynomial 0x{poly:X} is reducible",
            details=f"divisible by 0x{factor:X}" if factor else None
        )


class FieldParameterError(PolarCodecError):
    """Error for an unsupported degree or malformed polynomial mask."""
    def __init__(self, message: str, details: str = None):
        super().__init__(
            code=ErrorCode.E002,
            message=message,
            details=details
        )


class FieldDomainError(PolarCodecError):
    """Error for an operation outside the field's domain (inverse of zero)."""
    def __init__(self, message: str):
        super().__init__(
            code=ErrorCode.E003,
            message=message
        )


class LlrvShapeError(PolarCodecError):
    """Error when a vector has the wrong length for the field."""
    def __init__(self, message: str, details: str = None):
        super().__init__(
            code=ErrorCode.E100,
            message=message,
            details=details
        )


class LlrvDomainError(PolarCodecError):
    """Error when a log vector cannot be normalized."""
    def __init__(self, message: str = "All entries are -inf"):
        super().__init__(
            code=ErrorCode.E101,
            message=message
        )


class PermutationError(PolarCodecError):
    """Error when an affine index map is not a bijection."""
    def __init__(self, g: int):
        super().__init__(
            code=ErrorCode.E102,
            message=f"Multiplier g={g} does not define a permutation",
            details="g must be nonzero"
        )


class CodeParameterError(PolarCodecError):
    """Error for inconsistent code parameters."""
    def __init__(self, message: str, details: str = None):
        super().__init__(
            code=ErrorCode.E200,
            message=message,
            details=details
        )


class FrozenValueError(PolarCodecError):
    """Error when an input vector disagrees with a frozen symbol."""
    def __init__(self, index: int, expected: int, actual: int):
        super().__init__(
            code=ErrorCode.E201,
            message=f"Symbol {index} is frozen to {expected}",
            details=f"got {actual}"
        )


class ConstructionBudgetError(PolarCodecError):
    """Error when Monte-Carlo construction is asked for too few trials."""
    def __init__(self, trials: int, minimum: int = 1000):
        super().__init__(
            code=ErrorCode.E202,
            message=f"Construction needs at least {minimum:,} trials",
            details=f"got {trials:,}"
        )


class SplitFactorError(PolarCodecError):
    """Error for a split factor outside the supported set."""
    def __init__(self, m: int, n: int = None):
        super().__init__(
            code=ErrorCode.E203,
            message=f"Split factor M={m} is not supported",
            details=f"M must be 2 or 4 and smaller than N={n}" if n else "M must be 2 or 4"
        )


class FrozenFileFormatError(PolarCodecError):
    """Error reading or validating a frozen-set file."""
    def __init__(self, message: str, file_path: Path = None, line_number: int = None):
        super().__init__(
            code=ErrorCode.E204,
            message=message,
            details=f"line {line_number}" if line_number else None,
            file_path=file_path
        )


class DecodeOrderError(PolarCodecError):
    """Error when trellis evaluation is requested out of order."""
    def __init__(self, expected: int, requested: int):
        super().__init__(
            code=ErrorCode.E300,
            message=f"Symbol {requested} requested before symbol {expected}"
        )


class EmptyPathListError(PolarCodecError):
    """Error when path extension receives no paths."""
    def __init__(self, index: int = None):
        super().__init__(
            code=ErrorCode.E301,
            message="No survivor paths to extend",
            details=f"symbol {index}" if index is not None else None
        )


class FrameDecodeFailure(PolarCodecError):
    """Raised when no valid global path survives reconciliation."""
    def __init__(self, level: int, details: str = None):
        super().__init__(
            code=ErrorCode.E302,
            message=f"No valid global path at level {level}",
            details=details
        )


class ConstraintViolationError(PolarCodecError):
    """Raised by debug checks when a survivor breaks a frozen constraint."""
    def __init__(self, level: int, index: int):
        super().__init__(
            code=ErrorCode.E303,
            message=f"Survivor violates frozen symbol {index} at level {level}"
        )


class SorterInputError(PolarCodecError):
    """Error for a sorter input with unsupported length."""
    def __init__(self, message: str, details: str = None):
        super().__init__(
            code=ErrorCode.E400,
            message=message,
            details=details
        )


class SorterPhaseError(PolarCodecError):
    """Raised when a sorting network leaves its output unsorted."""
    def __init__(self, width: int, passes: int):
        super().__init__(
            code=ErrorCode.E401,
            message=f"W={width} sorter output not sorted after {passes} passes"
        )


class TimingParameterError(PolarCodecError):
    """Error for invalid architecture parameters."""
    def __init__(self, message: str, details: str = None):
        super().__init__(
            code=ErrorCode.E402,
            message=message,
            details=details
        )


class SimulationConfigError(PolarCodecError):
    """Error for invalid simulation settings."""
    def __init__(self, message: str, details: str = None):
        super().__init__(
            code=ErrorCode.E500,
            message=message,
            details=details
        )


class RunConfigError(PolarCodecError):
    """Error for inconsistent command-line or config-file settings."""
    def __init__(self, message: str, details: str = None, file_path: Path = None):
        super().__init__(
            code=ErrorCode.E501,
            message=message,
            details=details,
            file_path=file_path
        )


class SweepInfrastructureError(PolarCodecError):
    """Error when a simulation worker fails."""
    def __init__(self, message: str, details: str = None):
        super().__init__(
            code=ErrorCode.E502,
            message=message,
            details=details
        )


# Validation utilities

def validate_power_of_two(value: int, name: str = "value") -> int:
    """
    Check that value is a positive power of two.

    Args:
        value: Integer to check
        name: Parameter name for the error message

    Returns:
        log2 of value

    Raises:
        CodeParameterError: If value is not a power of two
    """
    if value < 1 or value & (value - 1):
        raise CodeParameterError(f"{name}={value} is not a power of two")
    return value.bit_length() - 1


def validate_field_element(value: int, q: int, name: str = "element") -> int:
    """
    Check that value lies in [0, q).

    Raises:
        FieldParameterError: If value is out of range
    """
    if not 0 <= int(value) < q:
        raise FieldParameterError(f"{name}={value} is outside GF({q})")
    return int(value)
