"""Solver parameters and the structured solve report."""

from __future__ import annotations

import json
from dataclasses import InitVar, asdict, dataclass, field
from typing import Any

from ..core import Hypergraph3
from ..structures import validate_loose_cycle


@dataclass(frozen=True)
class SolveConfig:
    """Desk-scale constants for both pipelines.

    ``epsilon`` defaults to ``delta / 4``. The connecting reservoir has its
    own size parameter ``reservoir_delta`` (``⌊reservoir_delta³ n⌋``
    vertices) and requires every pair to keep ``reservoir_share`` of them as
    co-neighbours. ``gamma`` is the goodness slack
    handed to the spanning-path step of the extremal pipeline; ``None``
    derives it from ``beta``.
    """

    delta: float = 0.3
    epsilon: float | None = None
    C: int = 24
    beta: float = 0.001
    gamma: float | None = None
    oracle_cap: int = 14
    hard_cap: int = 16
    retries: int = 64
    witness_budget: int = 2000
    jobs: int = 1
    reservoir_delta: float = 0.5
    reservoir_share: float = 0.5

    @property
    def eps(self) -> float:
        return self.delta / 4 if self.epsilon is None else self.epsilon

    @property
    def sigma(self) -> float:
        return (50 * self.beta) ** 0.25

    @property
    def spanning_gamma(self) -> float:
        if self.gamma is not None:
            return self.gamma
        return min(0.5, 2 * self.sigma**2)

    def reservoir_size(self, n: int) -> int:
        return int(self.reservoir_delta**3 * n + 1e-9)

    def reservoir_threshold(self, n: int) -> int:
        return max(2, int(self.reservoir_share * self.reservoir_size(n) + 1e-9))

    def as_params(self, seed: int) -> dict[str, Any]:
        return {
            "beta": self.beta,
            "delta": self.delta,
            "epsilon": self.eps,
            "C": self.C,
            "gamma": self.spanning_gamma,
            "sigma": self.sigma,
            "oracle_cap": self.oracle_cap,
            "hard_cap": self.hard_cap,
            "retries": self.retries,
            "reservoir_delta": self.reservoir_delta,
            "reservoir_share": self.reservoir_share,
            "seed": seed,
        }


OUTCOMES = ("cycle", "proven-none", "failure")
BRANCHES = ("oracle", "extremal", "non-extremal")


@dataclass(frozen=True)
class SolveReport:
    """Outcome of one solve attempt.

    Constructing a report with ``outcome == "cycle"`` re-validates the cycle
    against ``host``; an invalid or non-spanning cycle raises ``ValueError``.
    ``detail`` carries the failing stage and diagnostics and is not part of
    the serialized document.
    """

    outcome: str
    branch: str
    cycle: tuple[int, ...] | None
    params: dict[str, Any]
    retries: dict[str, int]
    elapsed_ms: float
    seed: int
    detail: dict[str, Any] | None = field(default=None, compare=False)
    host: InitVar[Hypergraph3 | None] = None

    def __post_init__(self, host: Hypergraph3 | None):
        if self.outcome not in OUTCOMES:
            raise ValueError(f"unknown outcome {self.outcome!r}")
        if self.branch not in BRANCHES:
            raise ValueError(f"unknown branch {self.branch!r}")
        if self.outcome == "cycle":
            if host is None or self.cycle is None:
                raise ValueError("a cycle report needs the host graph and the cycle")
            bad = validate_loose_cycle(host, self.cycle)
            if bad is not None:
                raise ValueError(f"refusing invalid cycle: {bad}")
            if len(self.cycle) != host.n:
                raise ValueError("refusing non-Hamilton cycle")
        elif self.cycle is not None:
            raise ValueError("only cycle outcomes carry a cycle")

    def to_document(self) -> dict[str, Any]:
        return {
            "outcome": self.outcome,
            "branch": self.branch,
            "cycle": list(self.cycle) if self.cycle is not None else None,
            "params": self.params,
            "retries": self.retries,
            "elapsed_ms": self.elapsed_ms,
            "seed": self.seed,
        }

    def to_json(self, *, include_elapsed: bool = True, indent: int | None = None) -> str:
        doc = self.to_document()
        if not include_elapsed:
            doc.pop("elapsed_ms")
        return json.dumps(doc, sort_keys=True, indent=indent)


def config_from_dict(values: dict[str, Any]) -> SolveConfig:
    known = set(asdict(SolveConfig()))
    return SolveConfig(**{k: v for k, v in values.items() if k in known})
