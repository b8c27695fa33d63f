class RubblingError(ValueError):
    """
    Base error for the toolkit. `code` is a stable machine-readable tag
    that the CLI prints next to the message.
    """
    code = "rubbling-error"

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message

    def __str__(self) -> str:
        return f"{self.code}: {self.message}"


class InvalidParameterError(RubblingError):
    code = "invalid-parameter"


class InvalidMoveError(RubblingError):
    code = "invalid-move"


class MoveNotExecutableError(RubblingError):
    code = "move-not-executable"


class InvalidLayoutError(RubblingError):
    code = "invalid-layout"


class InvalidSmoothingError(RubblingError):
    code = "invalid-smoothing"


class GraphTooSmallError(RubblingError):
    code = "graph-too-small"


class NoCandidatesError(RubblingError):
    code = "no-candidates"


class ReductionFailedError(RubblingError):
    code = "reduction-failed"


class LemmaViolationError(RubblingError):
    code = "lemma-violation"


class BudgetExceededError(RubblingError):
    code = "budget-exceeded"
