"""Exception types shared across the toolkit.

Evaluation errors carry the offending point when one is known, so CLI
reports and tests can surface a witness instead of a bare message.
"""
from __future__ import annotations


class EvaluationError(Exception):
    """Base class for numeric evaluation failures."""

    def __init__(self, message: str = "", point: complex | None = None):
        self.point = point
        if point is not None and message:
            message = f"{message} at z = {point}"
        super().__init__(message or self.__class__.__name__)


class PoleEncountered(EvaluationError):
    """A division by zero, or log/power of zero, during evaluation."""


class DegenerateDenominator(EvaluationError):
    """A structural denominator of a closed-form quantity vanished."""


class NotSensePreserving(EvaluationError):
    """The second dilatation has modulus >= 1 at the evaluation point."""

    def __init__(self, point: complex | None = None, modulus: float | None = None):
        self.modulus = modulus
        msg = "dilatation modulus >= 1"
        if modulus is not None:
            msg = f"dilatation modulus {modulus:.6g} >= 1"
        super().__init__(msg, point)


class CriticalPoint(EvaluationError):
    """The derivative of an analytic target vanishes, so log-derivatives blow up."""


class ZeroEncountered(EvaluationError):
    """The mapping itself vanishes where a formula divides by it."""


class AllSamplesFailed(EvaluationError):
    """Every sample of a grid sweep failed to evaluate; no estimate exists."""


class IoFailure(Exception):
    """An output file could not be written."""
