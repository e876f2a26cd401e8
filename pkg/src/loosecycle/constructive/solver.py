"""Top-level dispatch between the exact oracle and the two pipelines."""

from __future__ import annotations

import time

from ..core import Hypergraph3, extremality_witness
from ..oracle import OracleStatus, find_hamilton_cycle
from .config import SolveConfig, SolveReport
from .extremal import extremal_solve
from .nonextremal import nonextremal_solve

METHODS = ("auto", "oracle", "extremal", "nonextremal")


def oracle_report(H: Hypergraph3, cfg: SolveConfig, seed: int, limit: int,
                  retries: dict[str, int] | None = None) -> SolveReport:
    t0 = time.perf_counter()
    res = find_hamilton_cycle(H, limit=limit, jobs=cfg.jobs)
    elapsed = (time.perf_counter() - t0) * 1000
    counters = dict(retries or {})
    counters["oracle"] = counters.get("oracle", 0) + 1
    params = cfg.as_params(seed)
    if res.status is OracleStatus.CYCLE:
        assert res.cycle is not None
        return SolveReport("cycle", "oracle", res.cycle.seq, params, counters, elapsed, seed, host=H)
    if res.status is OracleStatus.NONE:
        return SolveReport("proven-none", "oracle", None, params, counters, elapsed, seed)
    return SolveReport("failure", "oracle", None, params, counters, elapsed, seed,
                       detail={"stage": "oracle", "reason": "cap-exceeded",
                               "message": f"n = {H.n} exceeds the oracle cap {limit}"})


def solve(H: Hypergraph3, config: SolveConfig | None = None, seed: int = 0,
          method: str = "auto") -> SolveReport:
    """Find a loose Hamilton cycle or report why none was produced.

    ``auto`` runs the oracle up to ``oracle_cap`` vertices; above it, a
    sparse ``⌈3n/4⌉``-set selects the extremal pipeline and its absence the
    non-extremal one. Odd ``n`` fails at once with a parity diagnostic. A
    pipeline failure on a graph of at most ``hard_cap``
    vertices falls back to the oracle.
    """
    cfg = config or SolveConfig()
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")
    if H.n % 2:
        routed = {"oracle": "oracle", "extremal": "extremal", "nonextremal": "non-extremal"}
        branch = routed.get(method, "oracle" if H.n <= cfg.oracle_cap else "non-extremal")
        return SolveReport("failure", branch, None, cfg.as_params(seed), {}, 0.0, seed,
                           detail={"stage": "parity", "message": f"n = {H.n} is odd"})
    if method == "oracle":
        return oracle_report(H, cfg, seed, cfg.oracle_cap)
    if method == "extremal":
        return extremal_solve(H, cfg, seed)
    if method == "nonextremal":
        return nonextremal_solve(H, cfg, seed)
    if H.n <= cfg.oracle_cap:
        return oracle_report(H, cfg, seed, cfg.oracle_cap)
    witness = extremality_witness(H, cfg.beta, cfg.witness_budget, seed)
    if witness is not None:
        report = extremal_solve(H, cfg, seed, witness=witness)
    else:
        report = nonextremal_solve(H, cfg, seed)
    if report.outcome == "failure" and H.n <= cfg.hard_cap:
        return oracle_report(H, cfg, seed, cfg.hard_cap, retries=report.retries)
    return report
