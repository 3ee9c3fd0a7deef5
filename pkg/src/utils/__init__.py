"""Shared utilities: domain exceptions and logging setup."""

from src.utils.exceptions import (
    ConventionError,
    DimensionMismatchError,
    FieldRefusedError,
    InconclusiveWindowError,
    NotComplexError,
    RewriteError,
    TruncationOverflow,
    UnsafeTruncationError,
    WorkbenchError,
)
from src.utils.logging import configure_logging

__all__ = [
    "WorkbenchError",
    "TruncationOverflow",
    "UnsafeTruncationError",
    "NotComplexError",
    "ConventionError",
    "InconclusiveWindowError",
    "FieldRefusedError",
    "RewriteError",
    "DimensionMismatchError",
    "configure_logging",
]
