"""Exception types raised by the analysis routines."""


class RecurrenceError(Exception):
    """Base class for every error raised by recurmod."""


class TrivialSeed(RecurrenceError, ValueError):
    """The seed reduces to (0, 0) modulo m, so only the all-zero period exists."""


class HypothesisViolation(RecurrenceError):
    """A rule was invoked outside the hypotheses under which it holds.

    ``failed`` names the hypothesis that did not hold.
    """

    def __init__(self, message: str, failed: str = ""):
        super().__init__(message)
        self.failed = failed


class FactorizationLimit(RecurrenceError, ValueError):
    """Trial division could not finish factoring the input."""


class DegenerateDiscriminant(RecurrenceError, ValueError):
    """q^2 - 4 == 0, so every prime divides the discriminant."""


class Disagreement(RecurrenceError):
    """Structural prediction and brute force differ at ``witness``."""

    def __init__(self, message: str, witness: int):
        super().__init__(message)
        self.witness = witness


class OutOfScope(RecurrenceError, ValueError):
    """The question cannot be answered from the available evidence."""
