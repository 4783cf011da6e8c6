"""
Exception hierarchy for the qholo engine.

Every error carries a stable ``code`` string so the command-line front end
can emit a structured error record without inspecting messages.
"""

from typing import Any, Dict, Optional


class QHoloError(Exception):
    """Base class for all engine errors"""

    code = "error"

    def __init__(self, message: str, **details: Any):
        super().__init__(message)
        self.message = message
        self.details = details

    def to_record(self) -> Dict[str, Any]:
        record = {"code": self.code, "message": self.message}
        for key, value in self.details.items():
            record[key] = value if isinstance(value, (int, str, list)) else str(value)
        return record


class ZeroDivisionPolyError(QHoloError):
    code = "division-by-zero"


class NotDivisibleError(QHoloError):
    code = "non-divisible"


class SpecializationError(QHoloError):
    code = "zero-over-zero"

    def __init__(self, message: str, factor: Any = None):
        super().__init__(message, factor=factor)
        self.factor = factor


class InterpolationError(QHoloError):
    code = "inconsistent-samples"


class WebError(QHoloError):
    code = "invalid-web"


class NonTrivalentError(WebError):
    code = "non-trivalent"


class FlowError(WebError):
    code = "flow-violation"


class SinkSourceError(WebError):
    code = "sink-source"


class NonPlanarError(WebError):
    code = "non-planar"


class StuckWebError(QHoloError):
    code = "stuck"

    def __init__(self, message: str, canonical: Optional[str] = None):
        super().__init__(message, canonical=canonical)
        self.canonical = canonical


class StepLimitError(QHoloError):
    code = "step-limit"

    def __init__(self, message: str, trace: Optional[list] = None):
        super().__init__(message, trace=trace or [])
        self.trace = trace or []


class BraidParseError(QHoloError):
    code = "malformed"

    def __init__(self, message: str, position: Optional[int] = None, code: Optional[str] = None):
        super().__init__(message, position=position if position is not None else -1)
        self.position = position
        if code is not None:
            self.code = code


class ColorSpecError(QHoloError):
    code = "bad-colors"


class InsufficientDataError(QHoloError):
    code = "insufficient-data"

    def __init__(self, message: str, required_n_max: int):
        super().__init__(message, required_n_max=required_n_max)
        self.required_n_max = required_n_max


class AnsatzError(QHoloError):
    code = "bad-ansatz"


class APolyFileError(QHoloError):
    code = "malformed-apoly"


class SequenceRangeError(QHoloError):
    code = "range-too-short"
