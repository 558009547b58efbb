"""Exception types raised by the public API."""
from __future__ import annotations

__all__ = [
    "SymmluError",
    "DomainError",
    "NormalizationError",
    "AmbiguousClassificationError",
    "NotGhzFormError",
]


class SymmluError(Exception):
    """Base class for all package errors."""


class DomainError(SymmluError, ValueError):
    """Input violates a documented precondition (arity, range, symmetry)."""


class NormalizationError(DomainError):
    """State or coefficient vector is not normalized within tolerance."""


class AmbiguousClassificationError(SymmluError):
    """Two classification branches accept within tolerance.

    Carries the competing candidate tags so the caller can inspect them.
    """

    def __init__(self, candidates):
        self.candidates = list(candidates)
        super().__init__(
            "classification is ambiguous at this tolerance; candidates: "
            + ", ".join(str(c) for c in self.candidates)
        )


class NotGhzFormError(SymmluError):
    """Density matrix is not supported on a pole pair |I>, |I^c|.

    Carries the offending matrix entries as a list of (row, col, value).
    """

    def __init__(self, message, offending=()):
        self.offending = list(offending)
        super().__init__(message)
