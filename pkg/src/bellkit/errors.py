"""Exception types shared across the package."""


class BellKitError(Exception):
    """Base class for all package-specific errors."""


class InvalidInputError(BellKitError, ValueError):
    """An argument violates a documented precondition or format."""


class InternalConsistencyError(BellKitError, RuntimeError):
    """A quantity that must be real/normalized by construction is not.

    Raised when floating-point arithmetic drifts past the guard tolerances;
    indicates a bug or corrupted input, never a recoverable condition.
    """


class InsufficientDataError(BellKitError, ValueError):
    """A dataset is too small for the requested estimator."""


class UnknownInterpretationError(BellKitError, LookupError):
    """Taxonomy lookup failed; carries the valid names and a suggestion."""

    def __init__(self, name: str, valid: tuple[str, ...], suggestion: str | None = None):
        self.name = name
        self.valid = valid
        self.suggestion = suggestion
        msg = f"unknown interpretation {name!r}"
        if suggestion is not None:
            msg += f"; did you mean {suggestion!r}?"
        msg += " Valid names: " + ", ".join(valid)
        super().__init__(msg)
