"""Exception hierarchy shared by every module of the package."""


class StModError(Exception):
    pass


class MixedFields(StModError):
    pass


class DivisionByZero(StModError, ZeroDivisionError):
    pass


class DimensionMismatch(StModError, ValueError):
    pass


class BadCharacteristic(StModError, ValueError):
    pass


class BadField(StModError, ValueError):
    pass


class InvalidModule(StModError, ValueError):
    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = list(violations)


class AlgebraMismatch(StModError, ValueError):
    pass


class NotInvariant(StModError, ValueError):
    pass


class NotInImage(StModError, ValueError):
    pass


class NotEigenvector(StModError, ValueError):
    pass


class UnclassifiedSummand(StModError):
    pass


class TooLarge(StModError, ValueError):
    pass


class InvariantViolation(StModError):
    """A fact the construction guarantees failed to hold; `step` names where."""

    def __init__(self, step: str, message: str = ""):
        super().__init__(f"[{step}] {message}")
        self.step = step
