"""Exception hierarchy shared by all toolkit modules.

Parse-level failures (``FormatError``) are kept distinct from domain
failures so the CLI can map them to different exit codes.
"""

from __future__ import annotations


class RpgaError(Exception):
    """Base class for every toolkit error."""

    code = "Error"


class UnknownGate(RpgaError):
    code = "UnknownGate"


class GateTooWide(RpgaError):
    code = "GateTooWide"


class WidthError(RpgaError):
    code = "WidthError"


class BadWidth(RpgaError):
    code = "BadWidth"


class SlotConflict(RpgaError):
    code = "SlotConflict"


class PinClash(RpgaError):
    code = "PinClash"


class TooWide(RpgaError):
    code = "TooWide"


class NoOutputs(RpgaError):
    code = "NoOutputs"


class MalformedTable(RpgaError):
    code = "MalformedTable"


class NotSymmetric(RpgaError):
    code = "NotSymmetric"


class ConfigMismatch(RpgaError):
    code = "ConfigMismatch"


class FormatError(RpgaError):
    """Parse failure carrying the offending source position."""

    code = "FormatError"

    def __init__(self, message: str, line: int = 0, column: int = 0,
                 expected: str | None = None):
        self.message = message
        self.line = line
        self.column = column
        self.expected = expected
        where = f"line {line}" if line else "input"
        hint = f" (expected {expected})" if expected else ""
        super().__init__(f"{where}, col {column}: {message}{hint}")
