"""
Exception hierarchy shared by every package.

The CLI maps ConstructionError / CpaParseError / NoPathError to exit code 2 and
InvariantViolation to exit code 3.
"""

from typing import Optional


class CpaError(Exception):
    """Base class for all errors raised by this project"""


class ConstructionError(CpaError, ValueError):
    """Invalid parameters for a value, expression or generator"""


class DimensionMismatchError(ConstructionError):
    """Operands live in different dimensions"""

    def __init__(self, expected: int, actual: int, what: str = "operand"):
        self.expected = expected
        self.actual = actual
        self.what = what
        super().__init__(f"{what} has dimension {actual}, expected {expected}")


class InvalidRangeError(ConstructionError):
    """A value range with z_min >= z_max"""

    def __init__(self, z_min, z_max):
        self.z_min = z_min
        self.z_max = z_max
        super().__init__(f"invalid range: z_min={z_min} must be below z_max={z_max}")


class UnsupportedDimensionError(ConstructionError):
    """Requested dimension is outside what the operation supports"""


class CpaParseError(CpaError, ValueError):
    """Malformed CPA (or related) JSON document"""

    def __init__(self, message: str, position: Optional[str] = None):
        self.position = position
        if position:
            message = f"{message} (at {position})"
        super().__init__(message)


class NoPathError(CpaError):
    """A line family admits no monotone path with two distinct vertices"""


class InstanceTooLargeError(CpaError):
    """An instance exceeds a configured guard"""

    def __init__(self, message: str, size: int, limit: int):
        self.size = size
        self.limit = limit
        super().__init__(f"{message}: {size} > {limit}")


class InvariantViolation(CpaError, AssertionError):
    """An internal invariant failed; indicates a bug, never bad input"""

    def __init__(self, message: str, **context):
        self.context = context
        if context:
            details = ", ".join(f"{key}={value}" for key, value in sorted(context.items()))
            message = f"{message} [{details}]"
        super().__init__(message)


__all__ = [
    'CpaError',
    'ConstructionError',
    'DimensionMismatchError',
    'InvalidRangeError',
    'UnsupportedDimensionError',
    'CpaParseError',
    'NoPathError',
    'InstanceTooLargeError',
    'InvariantViolation',
]
