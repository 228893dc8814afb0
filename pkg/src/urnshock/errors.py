"""Exception hierarchy.

Every error carries a short machine-readable ``code`` so callers (and the
CLI) can branch on the failure kind without parsing messages.
"""


class UrnShockError(ValueError):
    code = "error"

    def __init__(self, message=None):
        super().__init__(message or self.code)


class EmptyUrnError(UrnShockError):
    code = "empty-urn"


class InvalidMatrixError(UrnShockError):
    code = "invalid-matrix"


class GridExhaustedError(UrnShockError):
    code = "grid-exhausted"


class MalformedPathError(UrnShockError):
    code = "malformed-path"


class UnknownStateError(UrnShockError):
    code = "unknown-state"


class NoFailureWithinCapError(UrnShockError):
    code = "no-failure-within-cap"


class BelowGridError(UrnShockError):
    code = "below-grid"


class OffGridError(UrnShockError):
    code = "off-grid"


class ParseError(UrnShockError):
    code = "parse-error"

    def __init__(self, message=None, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
