"""Exception types shared across the package."""

from __future__ import annotations

from typing import Any


class HypergraphError(ValueError):
    """Base class for invalid input to hypergraph operations."""


class InvalidVertex(HypergraphError):
    pass


class DegenerateInput(HypergraphError):
    pass


class InvalidN(HypergraphError):
    pass


class OverlapError(HypergraphError):
    pass


class PreconditionViolation(HypergraphError):
    """Raised when an operation's precondition fails; ``clause`` names it."""

    def __init__(self, clause: str, message: str = ""):
        self.clause = clause
        super().__init__(f"{clause}: {message}" if message else clause)


class H3ParseError(HypergraphError):
    pass


class PipelineFailure(RuntimeError):
    """A constructive stage gave up.

    ``stage`` identifies where (``"absorbing"``, ``"reservoir"``, ...) and
    ``diagnostics`` carries whatever the stage knew when it stopped.
    """

    def __init__(self, stage: str, message: str = "", **diagnostics: Any):
        self.stage = stage
        self.diagnostics = diagnostics
        super().__init__(f"[{stage}] {message}" if message else f"[{stage}]")
