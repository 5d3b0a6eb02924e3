class OrthoMomentsError(Exception):
    """Base class for errors raised by the moment and invariant machinery."""


class ArgumentError(OrthoMomentsError, ValueError):
    """Inputs disagree in size, are not bijections, or are otherwise invalid."""


class SizeLimitError(OrthoMomentsError):
    """An enumeration or dense-tensor cap from settings would be exceeded."""

    def __init__(self, message, setting=None, limit=None):
        super().__init__(message)
        self.setting = setting
        self.limit = limit


class InconsistentSystemError(OrthoMomentsError, ArithmeticError):
    """An exact linear solve met a system the mathematics says cannot occur."""
