"""Exception hierarchy. Every error carries a stable ``code`` used in CLI output."""


class EngineError(Exception):
    code = "EngineError"

    def __init__(self, message: str = ""):
        super().__init__(message)
        self.message = message


class UnresolvedName(EngineError):
    code = "UnresolvedName"


class DomainError(EngineError):
    code = "DomainError"


class IndexMismatch(EngineError):
    code = "IndexMismatch"


class CarrierOverflow(EngineError):
    code = "CarrierOverflow"


class AlignmentError(EngineError):
    code = "AlignmentError"


class MalformedElement(EngineError):
    code = "MalformedElement"


class NotCartesian(EngineError):
    code = "NotCartesian"


class FrameMismatch(EngineError):
    code = "FrameMismatch"


class BaseMismatch(EngineError):
    code = "BaseMismatch"


class CoherenceViolation(EngineError):
    code = "CoherenceViolation"


class ValidationError(EngineError):
    code = "ValidationError"

    def __init__(self, message: str = "", violations: list[str] | None = None):
        super().__init__(message)
        self.violations = list(violations or [])


class UnboundName(EngineError):
    """A session command referenced a name that was never defined."""

    code = "NameError"


class ParseError(EngineError):
    code = "ParseError"

    def __init__(self, message: str, line: int, column: int, expected: tuple[str, ...] = ()):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column
        self.expected = expected
