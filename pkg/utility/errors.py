"""
Exception hierarchy for the rnc-fan library.

Every domain error is a ValueError carrying a short machine-readable ``code``.
The command line prints ``{"error": code, "message": text}`` for these and exits
with status 1.
"""


class RncError(ValueError):
    code = "rnc-error"

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message

    def to_dict(self) -> dict:
        return {"error": self.code, "message": self.message}


class InvalidSequenceError(RncError):
    code = "invalid-sequence"


class NegativeWeightError(RncError):
    code = "negative-weight"


class ParseError(RncError):
    code = "parse-error"


class DimensionMismatchError(RncError):
    code = "dimension-mismatch"


class WindowTooSmallError(RncError):
    code = "window-too-small"


class FiberViolationError(RncError):
    code = "fiber-violation"


class InternalInconsistencyError(RncError):
    code = "internal-inconsistency"


class NonTreeError(RncError):
    code = "graph-not-tree"


class DegenerateConeError(RncError):
    code = "degenerate-cone"


class TraversalCapError(RncError):
    code = "cap-exceeded"


class FlipFailureError(RncError):
    code = "flip-failure"
