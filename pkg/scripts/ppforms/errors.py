"""Exception hierarchy for ppforms.

Errors caused by malformed input also derive from ``ValueError`` so callers that
only care about "bad input" can catch the builtin.
"""

from __future__ import annotations

from typing import Any


class PPFormsError(Exception):
    """Base class for all ppforms errors."""


class InvalidDegreeError(PPFormsError, ValueError):
    """A degree is outside ``[0, n]`` or otherwise unusable."""


class InvalidMultiIndexError(PPFormsError, ValueError):
    """A multi-index is not strictly increasing inside ``[1, n]``."""


class DimensionMismatchError(PPFormsError, ValueError):
    """Operands live on different ambient spaces or have incompatible shapes."""


class ScalarModeError(PPFormsError, ValueError):
    """Exact and floating scalars were mixed in one expression."""


class BidegreeError(PPFormsError, ValueError):
    """A form does not have the bidegree an operation requires."""


class HermitianViolationError(PPFormsError, ValueError):
    """A coefficient matrix is not hermitian."""


class NonRealFormError(PPFormsError, ValueError):
    """A form that must be real is not equal to its conjugate."""


class SingularBasisError(PPFormsError, ValueError):
    """A basis change matrix is not invertible."""


class OffQuadricError(PPFormsError, ValueError):
    """A point expected on a quadric does not satisfy its equation."""


class PreconditionError(PPFormsError, ValueError):
    """Arguments violate a documented precondition."""


class SchemaError(PPFormsError, ValueError):
    """A JSON payload does not match the expected file format."""


class SearchFailureError(PPFormsError):
    """A bounded search ended without finding what it was looking for."""


class TheoremViolationError(PPFormsError):
    """A computed instance contradicts a proven statement.

    Attributes:
        payload: JSON-serializable description of the failing instance, sufficient
            to replay it.
    """

    def __init__(self, message: str, payload: dict[str, Any] | None = None) -> None:
        super().__init__(message)
        self.payload = payload or {}
