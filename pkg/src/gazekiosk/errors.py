"""Shared exception types."""


class GazeKioskError(Exception):
    """Base class for package errors."""


class InvalidLandmarksError(GazeKioskError):
    """Eye landmarks are degenerate (zero span corners or eyelids)."""


class NoContrastError(GazeKioskError):
    """Threshold calibration found nothing to separate."""


class CalibrationFailedError(GazeKioskError):
    """Too few usable samples in the calibration window."""


class TraceParseError(GazeKioskError):
    def __init__(self, path: str, line_no: int, reason: str):
        super().__init__(f"{path}:{line_no}: {reason}")
        self.path = path
        self.line_no = line_no
        self.reason = reason


class NonMonotonicTimestampError(GazeKioskError):
    """Pipeline inputs must arrive in nondecreasing timestamp order."""
