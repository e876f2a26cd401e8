"""Absorbing-path pipeline for graphs far from the extremal construction."""

from __future__ import annotations

import time

import numpy as np

from ..core import Hypergraph3
from ..errors import PipelineFailure, PreconditionViolation
from ..oracle import greedy_loose_path
from .absorbing import AbsorbingStructure, absorb, build_absorbing_path
from .config import SolveConfig, SolveReport
from .extension import DONE, ExtensionParams, extend_path
from .reservoir import Reservoir, chain_pieces, select_reservoir

# seed stride between outer attempts
ATTEMPT_STRIDE = 7919
CLOSE_BACKTRACK = 8


def _sweep(H: Hypergraph3, L: list[int], free: np.ndarray) -> list[int]:
    """Greedily extend both ends of ``L`` with pairs from ``free`` (mutated)."""
    adj = H.adj
    for end in (-1, 0):
        while True:
            idx = np.flatnonzero(free)
            if len(idx) < 2:
                break
            hits = np.argwhere(np.triu(adj[L[end]][np.ix_(idx, idx)], k=1))
            if not len(hits):
                break
            a, b = (int(idx[i]) for i in hits[0])
            if end == -1:
                L.extend((a, b))
            else:
                L[:0] = [b, a]
            free[[a, b]] = False
    return L


def _close(H: Hypergraph3, L: list[int], free: np.ndarray, R: Reservoir) -> int | None:
    """Vertex closing ``L`` into a cycle, unused reservoir vertices first.

    Backs off the tail two vertices at a time when no free vertex closes.
    """
    for _ in range(CLOSE_BACKTRACK + 1):
        row = H.adj[L[-1], L[0]] & free
        cands = np.flatnonzero(row)
        if len(cands):
            pref = [c for c in cands.tolist() if c in R.verts]
            return (pref or cands.tolist())[0]
        if len(L) < 5:
            return None
        free[L[-2:]] = True
        del L[-2:]
    return None


def _replace_segment(L: list[int], old: tuple[int, ...], new: tuple[int, ...]) -> list[int]:
    k = len(old)
    for i in range(len(L) - k + 1):
        if tuple(L[i:i + k]) == old:
            return L[:i] + list(new) + L[i + k:]
        if tuple(L[i:i + k]) == old[::-1]:
            return L[:i] + list(new[::-1]) + L[i + k:]
    raise AssertionError("absorbing path is not a segment")


def _attempt(H: Hypergraph3, cfg: SolveConfig, seed: int, counters: dict[str, int]) -> tuple[int, ...]:
    n = H.n
    A: AbsorbingStructure = build_absorbing_path(H, cfg.delta, seed, cfg.retries)
    counters["absorbing"] += A.attempts
    R = select_reservoir(H, A, cfg.delta, seed, cfg.retries,
                         size=cfg.reservoir_size(n), threshold=cfg.reservoir_threshold(n))
    counters["reservoir"] += R.attempts
    blocked = A.vertices()
    avail = [v for v in range(n) if v not in blocked and v not in R.verts]
    Q = greedy_loose_path(H, avail) or []
    params = ExtensionParams(cfg.eps, cfg.C, cfg.beta, cfg.delta)
    while True:
        ext = extend_path(H, Q, R, params, blocked)
        if ext is DONE:
            break
        if len(ext.path) - len(Q) < params.min_gain or len(ext.consumed) > 7:
            raise AssertionError("extension step broke its progress guarantee")
        Q = list(ext.path.seq)
        counters["extension"] += 1
    joined = chain_pieces(H, [A.path.seq, Q], R) if Q else (list(A.path.seq), [])
    if joined is None:
        raise PipelineFailure("connect", "no reservoir vertex joins the absorbing path", reason="connect")
    L = joined[0]
    free = np.ones(n, dtype=bool)
    free[L] = False
    L = _sweep(H, L, free)
    r = _close(H, L, free, R)
    if r is None:
        raise PipelineFailure("close", "no vertex closes the path", reason="close")
    free[r] = False
    leftovers = np.flatnonzero(free).tolist()
    P = absorb(A, H, leftovers)
    counters["absorb"] += 1
    seq = _replace_segment(L, A.path.seq, P.seq) + [r]
    return tuple(seq)


def nonextremal_solve(H: Hypergraph3, config: SolveConfig | None = None, seed: int = 0) -> SolveReport:
    """Absorbing path, reservoir, path extension, closure and final absorption.

    Every outer attempt derives its own seed from ``seed``; the report carries
    attempt counters per randomized stage. Failures are reported, never
    returned as cycles.
    """
    cfg = config or SolveConfig()
    t0 = time.perf_counter()
    counters = {"outer": 0, "absorbing": 0, "reservoir": 0, "extension": 0, "absorb": 0}
    detail = None
    cycle = None
    if H.n % 2:
        detail = {"stage": "parity", "message": f"n = {H.n} is odd"}
    else:
        for t in range(max(1, cfg.retries // 8)):
            counters["outer"] += 1
            try:
                cycle = _attempt(H, cfg, seed + ATTEMPT_STRIDE * t, counters)
                break
            except PipelineFailure as exc:
                detail = {"stage": exc.stage, "message": str(exc), **_plain(exc.diagnostics)}
                # deterministic structural failures will not change with a new seed
                if exc.diagnostics.get("reason") == "no-room":
                    break
            except PreconditionViolation as exc:
                detail = {"stage": "absorb", "message": str(exc), "clause": exc.clause}
    elapsed = (time.perf_counter() - t0) * 1000
    if cycle is not None:
        return SolveReport("cycle", "non-extremal", cycle, cfg.as_params(seed), counters,
                           elapsed, seed, host=H)
    return SolveReport("failure", "non-extremal", None, cfg.as_params(seed), counters,
                       elapsed, seed, detail=detail)


def _plain(diag: dict) -> dict:
    out = {}
    for k, v in diag.items():
        if isinstance(v, (tuple, list)):
            v = [int(x) if isinstance(x, (int, np.integer)) else x for x in v]
        elif isinstance(v, np.integer):
            v = int(v)
        out[k] = v
    return out
