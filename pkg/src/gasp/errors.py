"""Exception types shared across the package."""


class GaspError(Exception):
    """Base class for all package-specific failures."""


class ParameterError(GaspError, ValueError):
    """Invalid argument, out-of-range parameter, or shape mismatch."""


class SingularMatrixError(GaspError, ArithmeticError):
    """A linear solve or inversion hit a singular matrix."""


class PlanSearchError(GaspError, RuntimeError):
    """Evaluation-point search exhausted its attempt budget."""

    def __init__(self, attempts: int):
        super().__init__(f"no valid evaluation points after {attempts} attempts")
        self.attempts = attempts


class PlanVerificationError(GaspError, RuntimeError):
    """Explicitly supplied evaluation points failed verification."""


class VerificationError(GaspError, RuntimeError):
    """A decoded product did not match the directly computed one."""


class BudgetExceededError(GaspError, RuntimeError):
    """An exhaustive audit refused to run past its step budget."""
