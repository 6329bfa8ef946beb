"""Exception types shared across the package."""


class PaintlabError(Exception):
    """Base class for all package errors."""


class ParameterError(PaintlabError, ValueError):
    """An argument violates a documented precondition."""


class StateError(PaintlabError, RuntimeError):
    """An operation was invoked in the wrong phase or on the wrong object."""


class IllegalMoveError(PaintlabError):
    """A strategy proposed a move the referee rejects.

    ``offender`` is ``"painter"`` or ``"corrector"``.
    """

    def __init__(self, offender: str, message: str):
        super().__init__(message)
        self.offender = offender


class ResourceCapError(PaintlabError):
    """Input exceeds a configured hard cap (solver sizes, materialization)."""


class ConfigError(PaintlabError, ValueError):
    """An experiment configuration is invalid or names cannot be resolved."""
