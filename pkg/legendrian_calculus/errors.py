from typing import Optional


class CalculusError(ValueError):
    """Base class of every domain error raised by the package."""


class FrontError(CalculusError):
    def __init__(self, message: str, event_index: Optional[int] = None):
        if event_index is not None:
            message = f"{message} (event {event_index})"
        super().__init__(message)
        self.event_index = event_index


class StrandUnderflow(FrontError):
    pass


class PositionOutOfRange(FrontError):
    pass


class NotAKnot(FrontError):
    pass


class MoveNotApplicable(CalculusError):
    def __init__(self, move: str, reason: str):
        super().__init__(f"{move} is not applicable: {reason}")
        self.move = move
        self.reason = reason


class InvalidGaussCode(CalculusError):
    pass


class UnderlyingMismatch(CalculusError):
    pass


class InvalidLadder(CalculusError):
    pass


class InvalidPath(CalculusError):
    def __init__(self, message: str, event_index: Optional[int] = None):
        if event_index is not None:
            message = f"{message} (event {event_index})"
        super().__init__(message)
        self.event_index = event_index


class AssignmentMismatch(CalculusError):
    pass


class InsufficientRungs(CalculusError):
    def __init__(self, message: str, rung: Optional[int] = None):
        super().__init__(message)
        self.rung = rung


class DimensionMismatch(CalculusError):
    pass


class InconsistentDescriptor(CalculusError):
    pass


class AlphabetMismatch(CalculusError):
    pass


class InvalidWord(CalculusError):
    pass


class NotCommuting(CalculusError):
    pass


class SchemaError(CalculusError):
    pass


class CorpusLoadError(CalculusError):
    def __init__(self, fixture: str, cause: Exception):
        super().__init__(f"cannot load fixture {fixture!r}: {cause}")
        self.fixture = fixture
        self.cause = cause
