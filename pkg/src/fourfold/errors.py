"""Exception hierarchy shared across the package."""


class FourfoldError(Exception):
    """Base class for every error raised by this package."""


class DomainError(FourfoldError):
    """Invalid construction data (bad atom parameters, malformed input files)."""

    def __init__(self, message, position=None):
        super().__init__(message)
        self.message = message
        self.position = position


class ParseError(FourfoldError):
    """Syntax error in the expression DSL, with a byte offset."""

    def __init__(self, message, position, expected=()):
        super().__init__(f"{message} (at offset {position})")
        self.message = message
        self.position = position
        self.expected = frozenset(expected)


class UnsupportedExpression(FourfoldError):
    """No rule is available for this expression; we refuse to guess."""


class ConsistencyError(FourfoldError):
    """An internal invariant was violated.  Always indicates a bug."""


class BoundUnavailable(FourfoldError):
    """A curvature bound was requested but alpha^2 is not known."""


class DegenerateForm(FourfoldError):
    """The supplied intersection form is singular."""


class ScaleError(FourfoldError):
    """Problem size exceeds the desk-scale cap of the brute-force oracle."""


class MissingData(FourfoldError):
    """A model geometry lacks the fields required by this check."""


class PreconditionViolation(FourfoldError):
    """A check was invoked on a model that does not satisfy its gate."""


class NotSimplyConnected(FourfoldError):
    """Operation requires a simply connected expression."""
