from __future__ import annotations

from typing import Any, Dict, Optional


class MfkError(RuntimeError):
    """Base class for every error raised by the engine.

    `detail` is a JSON-ready dict (locations, offending polynomials as
    canonical text) that the CLI copies into reports unchanged.
    """

    code = "error"

    def __init__(self, message: str, detail: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.detail: Dict[str, Any] = dict(detail or {})

    def to_dict(self) -> Dict[str, Any]:
        return {"error": self.code, "message": self.message, "detail": self.detail}


# -----------------------------
# Usage / input errors (CLI exit code 2)
# -----------------------------
class UsageError(MfkError):
    code = "usage"


class BadIndex(UsageError):
    code = "bad_index"


class UnknownLabel(UsageError):
    code = "unknown_label"


class ConfigError(UsageError):
    code = "config"


class ParseError(UsageError):
    code = "parse"


# -----------------------------
# Algebra errors
# -----------------------------
class DimensionMismatch(MfkError):
    code = "dimension_mismatch"


class NotSquare(MfkError):
    code = "not_square"


class NonUnitDeterminant(MfkError):
    code = "non_unit_determinant"


class NotDivisible(MfkError):
    code = "not_divisible"


class CapExceeded(MfkError):
    code = "cap_exceeded"


# -----------------------------
# Factorization / blowup errors
# -----------------------------
class NotAFactorization(MfkError):
    code = "not_a_factorization"


class NotSplittable(MfkError):
    code = "not_splittable"


class NotBlockDiagonal(MfkError):
    code = "not_block_diagonal"


class BadPivot(MfkError):
    code = "bad_pivot"


class WitnessFailed(MfkError):
    code = "witness_failed"


class GenerationFailed(MfkError):
    code = "generation_failed"


class NotLinearUnit(MfkError):
    code = "not_linear_unit"


class IdentityFailed(MfkError):
    code = "identity_failed"
