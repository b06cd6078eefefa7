"""Exception types shared across the package."""

from __future__ import annotations


class HappyLadderError(Exception):
    pass


class RepresentationOverflow(HappyLadderError):
    """A value would need more digits than the configured budget allows.

    ``entries`` carries the partial result (e.g. the ladder built so far)
    when the overflow interrupts a longer computation.
    """

    def __init__(self, message: str, entries: list | None = None):
        super().__init__(message)
        self.entries = entries if entries is not None else []


class CapExceeded(HappyLadderError):
    """A dynamic-programming table would exceed its state cap."""


class Infeasible(HappyLadderError):
    pass


class InvalidTarget(HappyLadderError, ValueError):
    pass


class FormulaConditionFailed(HappyLadderError):
    pass


class BaseMismatch(HappyLadderError, ValueError):
    pass


class RleParseError(HappyLadderError, ValueError):
    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position}: {text!r}")
        self.text = text
        self.position = position
