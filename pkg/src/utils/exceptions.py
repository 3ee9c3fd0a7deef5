"""
Domain Exceptions.

Every failure the workbench reports on purpose derives from WorkbenchError,
so the CLI can map them to exit codes and report entries in one place.

Design Principles:
- One hierarchy rooted at WorkbenchError
- Loud failure for convention bugs (never a silent wrong answer)
- Structured ``details`` payload for JSON reports
"""

from typing import Any, Dict, Optional


class WorkbenchError(Exception):
    """Base class for all workbench errors."""

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.details: Dict[str, Any] = details or {}

    def to_dict(self) -> Dict[str, Any]:
        """Serialize the error for reports."""
        return {
            "error": self.__class__.__name__,
            "message": self.message,
            "details": self.details,
        }


class TruncationOverflow(WorkbenchError):
    """An exponent exceeded the truncation bound D of the loop algebra."""


class UnsafeTruncationError(WorkbenchError):
    """A window needs a larger truncation bound or input margin than configured."""


class NotComplexError(WorkbenchError):
    """Two composable maps do not compose to zero."""


class ConventionError(WorkbenchError):
    """An internal consistency system failed; the sign conventions disagree."""


class InconclusiveWindowError(WorkbenchError):
    """The bidegree window is too small to decide the question."""


class FieldRefusedError(WorkbenchError):
    """The operation needs a division the coefficient field cannot perform."""


class RewriteError(WorkbenchError):
    """A relation does not match, or a rewriting search ran out of budget."""


class DimensionMismatchError(WorkbenchError, ValueError):
    """Matrix or vector shapes do not agree."""
