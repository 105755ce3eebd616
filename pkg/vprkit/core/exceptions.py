"""
Error hierarchy shared by every vprkit module.

The CLI catches `VprError` at the command boundary and turns it into exit
code 1; library callers can catch the narrower classes.
"""


class VprError(Exception):
    pass


class FormatError(VprError):
    """Malformed file content. `offset` is the byte offset when known."""

    def __init__(self, message: str, offset: int | None = None):
        self.offset = offset
        if offset is not None:
            message = f"{message} (at byte offset {offset})"
        super().__init__(message)


class MagicError(FormatError):
    pass


class VersionError(FormatError):
    pass


class LengthError(FormatError):
    pass


class SizeError(VprError, ValueError):
    pass


class DimensionError(VprError, ValueError):
    pass


class GroundTruthIndexError(VprError, IndexError):
    pass


class ConfigError(VprError):
    pass


class UnknownGroupError(VprError, KeyError):
    """Standardization statistics requested for a group that was never fitted."""


class MatchingError(VprError, ValueError):
    pass


class EvaluationError(VprError, ValueError):
    pass


class StageError(VprError):
    """A pipeline stage failed; keeps the stage name for the CLI message."""

    def __init__(self, stage: str, cause: BaseException):
        self.stage = stage
        self.cause = cause
        super().__init__(f"{stage}: {cause}")
