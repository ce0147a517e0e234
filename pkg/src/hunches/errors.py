"""Engine error hierarchy.

Every fault the engine can raise is a :class:`HunchError` with a stable,
machine-readable ``code``. The HTTP layer maps codes one-to-one onto API
error payloads, so codes are part of the public contract and must not
change between releases.
"""

from __future__ import annotations


class HunchError(Exception):
    code = "ENGINE_ERROR"
    http_status = 400

    def __init__(self, message: str, **detail):
        super().__init__(message)
        self.message = message
        self.detail = detail


class UnknownItem(HunchError):
    code = "UNKNOWN_ITEM"
    http_status = 404


class UnknownDataset(HunchError):
    code = "UNKNOWN_DATASET"
    http_status = 404


class UnknownView(HunchError):
    code = "UNKNOWN_VIEW"
    http_status = 404


class UnknownHunch(HunchError):
    code = "UNKNOWN_HUNCH"
    http_status = 404


class ValidationFailed(HunchError):
    """Raised by recording operations when the built hunch does not validate.

    Carries the full report; violations are data, so the API returns them
    verbatim rather than stopping at the first.
    """

    code = "VALIDATION_FAILED"
    http_status = 422

    def __init__(self, report, message: str = "hunch failed validation"):
        super().__init__(message, violations=[v.to_json_dict() for v in report.violations])
        self.report = report


class ExprError(HunchError):
    code = "EXPRESSION_INVALID"
    http_status = 422


class EvaluationError(HunchError):
    code = "EXPRESSION_EVAL"
    http_status = 422


class ConflictingExclusionTarget(HunchError):
    code = "CONFLICTING_EXCLUSION_TARGET"
    http_status = 409


class DuplicateProvisionalItem(HunchError):
    code = "DUPLICATE_PROVISIONAL_ITEM"
    http_status = 409


class ViewBaseMismatch(HunchError):
    code = "VIEW_BASE_MISMATCH"
    http_status = 409


class EmptyText(HunchError):
    code = "EMPTY_TEXT"
    http_status = 422


class FormAnswerMismatch(HunchError):
    code = "FORM_ANSWER_MISMATCH"
    http_status = 422


class StrokeOutOfBounds(HunchError):
    code = "STROKE_OUT_OF_BOUNDS"
    http_status = 422


class UnanchoredItem(HunchError):
    code = "UNANCHORED_ITEM"
    http_status = 404


class PixelOutsideAxisRange(HunchError):
    code = "PIXEL_OUTSIDE_AXIS_RANGE"
    http_status = 422


class DegenerateAxis(HunchError):
    code = "DEGENERATE_AXIS"
    http_status = 422


class MissingField(HunchError):
    code = "MISSING_FIELD"
    http_status = 404


class NotModelBased(HunchError):
    code = "NOT_MODEL_BASED"
    http_status = 409


class UnknownParent(HunchError):
    code = "UNKNOWN_PARENT"
    http_status = 404


class CrossHunchParent(HunchError):
    code = "CROSS_HUNCH_PARENT"
    http_status = 409


class CycleDetected(HunchError):
    code = "CYCLE_DETECTED"
    http_status = 409


class SelfLink(HunchError):
    code = "SELF_LINK"
    http_status = 409


class RaggedRows(HunchError):
    code = "RAGGED_ROWS"
    http_status = 422


class DuplicateIds(HunchError):
    code = "DUPLICATE_IDS"
    http_status = 422


class EmptyInput(HunchError):
    code = "EMPTY_INPUT"
    http_status = 422


class CorruptFile(HunchError):
    code = "CORRUPT_FILE"
    http_status = 422


class VersionUnsupported(HunchError):
    code = "VERSION_UNSUPPORTED"
    http_status = 422


class GapDetected(HunchError):
    code = "GAP_DETECTED"
    http_status = 409


class AuthRequired(HunchError):
    code = "AUTH_REQUIRED"
    http_status = 401
