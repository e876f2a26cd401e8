"""One path-growing step of the non-extremal pipeline.

Given a loose path ``Q`` and the uncovered set ``W``, produce a longer path
that spends at most seven reservoir vertices. Three strategies are tried in
order: a dense path inside ``W`` (case 1), swapping one block of ``Q`` for a
longer complete-tripartite path (case 2), and swapping three blocks for
tripartite paths plus a path through their leftover vertices (case 3).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..core import Hypergraph3, inside_edge_count
from ..errors import PipelineFailure
from ..oracle import dense_path_in
from ..structures import LoosePath, validate_loose_path
from .reservoir import Reservoir, chain_pieces

CASE2_BLOCK_TRIES = 8
CASE3_BLOCK_POOL = 8
TRACE_CANDIDATES = 6


@dataclass(frozen=True)
class ExtensionParams:
    epsilon: float
    C: int
    beta: float
    delta: float

    @property
    def min_gain(self) -> float:
        return self.epsilon * self.C


@dataclass(frozen=True)
class Extension:
    path: LoosePath
    case: int
    consumed: tuple[int, ...]


class _Done:
    def __repr__(self) -> str:
        return "DONE"


DONE = _Done()


def uncovered(H: Hypergraph3, Q: Sequence[int], R: Reservoir,
              blocked: frozenset[int] = frozenset()) -> np.ndarray:
    mask = np.ones(H.n, dtype=bool)
    mask[list(Q)] = False
    mask[list(R.verts)] = False
    mask[list(blocked)] = False
    return np.flatnonzero(mask)


def make_blocks(length: int, C: int, epsilon: float) -> list[tuple[int, int]]:
    """Index ranges ``[s, e)`` of disjoint blocks of a path of odd ``length``.

    Blocks start at odd and end at even indices, so cutting one out leaves
    loose paths on both sides; a single link vertex separates neighbours.
    """
    size = C + 2 if (C + 2) % 2 else C + 3
    cap = max(size, math.floor((1 + epsilon) * C))
    blocks = []
    s = 1
    while s + size <= length - 1:
        blocks.append((s, s + size))
        s += size + 1
    if blocks:
        s_last, e_last = blocks[-1]
        if e_last < length - 1 and (length - 1) - s_last <= cap:
            blocks[-1] = (s_last, length - 1)
    return blocks


def _biclique(F: np.ndarray, n_mids: int, n_links: int, alive: np.ndarray) -> tuple[list[int], list[int]] | None:
    """Find ``links`` and ``mids`` with every link-mid pair an edge of ``F``.

    Low-degree vertices are peeled first, then links are added greedily,
    each time keeping the largest common neighbourhood.
    """
    alive = alive.copy()
    need = min(n_mids, n_links)
    while True:
        deg = (F & alive[None, :]).sum(axis=1)
        drop = alive & (deg < need)
        if not drop.any():
            break
        alive &= ~drop
    if alive.sum() < n_mids + n_links:
        return None
    deg = (F & alive[None, :]).sum(axis=1) * alive
    for start in np.argsort(-deg, kind="stable")[:3]:
        if not alive[start]:
            break
        links = [int(start)]
        common = F[start] & alive
        while len(links) < n_links:
            cand = alive.copy()
            cand[links] = False
            score = (F[cand] & common[None, :]).sum(axis=1)
            if not len(score):
                break
            best = int(np.argmax(score))
            pick = int(np.flatnonzero(cand)[best])
            if score[best] < n_mids:
                break
            links.append(pick)
            common &= F[pick]
        if len(links) == n_links and common.sum() >= n_mids:
            mids = np.flatnonzero(common)[:n_mids].tolist()
            return mids, links
    return None


def tripartite_paths(H: Hypergraph3, B: Sequence[int], W: np.ndarray, epsilon: float,
                     min_len: float = 0) -> list[int] | None:
    """Longest path through a complete tripartite piece ``V1 × V2 × V3``.

    ``V3 ⊆ B`` is a co-neighbourhood trace shared by many good pairs of
    ``W``; ``V1, V2 ⊆ W`` form a biclique of pairs whose co-neighbourhood
    contains ``V3``. The path alternates links from ``V2`` and ``V3`` with
    middles from ``V1``: ``y0 m0 x0 m1 y1 ... x_{k-1} m_{2k-1} y_k``.
    Returns ``None`` if no such path reaches ``min_len`` vertices.
    """
    B = np.asarray(B, dtype=np.int64)
    if len(W) < 3 or len(B) == 0 or len(B) > 62:
        return None
    T = H.adj[np.ix_(W, W, B)]
    count = T.sum(axis=2)
    good = np.triu(count >= (0.25 + epsilon / 2) * len(B), k=1)
    if not good.any():
        return None
    weights = np.left_shift(np.int64(1), np.arange(len(B), dtype=np.int64))
    codes = (T.astype(np.int64) * weights).sum(axis=2)
    traces, freq = np.unique(codes[good], return_counts=True)
    order = np.argsort(-freq, kind="stable")[:TRACE_CANDIDATES]
    good = good | good.T
    best: list[int] | None = None
    for code in traces[order].tolist():
        V3 = B[[i for i in range(len(B)) if (code >> i) & 1]]
        F = good & ((codes & code) == code)
        alive = F.any(axis=1)
        for k in range(len(V3), 0, -1):
            length = 4 * k + 1
            if length < min_len or (best is not None and length <= len(best)):
                break
            bic = _biclique(F, 2 * k, k + 1, alive)
            if bic is None:
                continue
            mids, links = (W[bic[0]].tolist(), W[bic[1]].tolist())
            seq = [links[0]]
            for i in range(k):
                seq += [mids[2 * i], int(V3[i]), mids[2 * i + 1], links[i + 1]]
            best = seq
            break
    return best


class _Step:
    def __init__(self, H: Hypergraph3, Q: list[int], W: np.ndarray, R: Reservoir,
                 params: ExtensionParams):
        self.H = H
        self.Q = Q
        self.W = W
        self.R = R
        self.p = params

    def accept(self, seq: list[int] | None, bridges: list[int], case: int) -> Extension | None:
        if seq is None or len(seq) - len(self.Q) < self.p.min_gain or len(bridges) > 7:
            return None
        return Extension(LoosePath(seq), case, tuple(bridges))

    def case1(self) -> Extension | None:
        H, W, d = self.H, self.W, self.p.delta
        if inside_edge_count(H, W) < d**2 * len(W) ** 3:
            return None
        P = dense_path_in(H, W.tolist(), d**2)
        if not P:
            return None
        if not self.Q:
            return self.accept(P, [], 1)
        joined = chain_pieces(H, [self.Q, P], self.R, commit=False)
        return self.accept(*joined, 1) if joined else None

    def _block_loads(self, blocks) -> np.ndarray:
        H, W = self.H, self.W
        Qa = np.asarray(self.Q, dtype=np.int64)
        link_w = H.adj[np.ix_(Qa, W, W)].sum(axis=(1, 2)) // 2
        return np.array([link_w[s:e].sum() for s, e in blocks], dtype=np.int64)

    def case2(self, blocks, loads) -> Extension | None:
        pairs = math.comb(len(self.W), 2)
        eps = self.p.epsilon
        ranked = [i for i in np.argsort(-loads, kind="stable")
                  if loads[i] >= (0.25 + eps) * (blocks[i][1] - blocks[i][0]) * pairs]
        for i in ranked[:CASE2_BLOCK_TRIES]:
            s, e = blocks[i]
            need = (e - s) - 2 + self.p.min_gain
            P = tripartite_paths(self.H, self.Q[s:e], self.W, eps, min_len=need)
            if P is None:
                continue
            joined = chain_pieces(self.H, [self.Q[:s], P, self.Q[e:]], self.R, commit=False)
            if joined:
                ext = self.accept(*joined, 2)
                if ext:
                    return ext
        return None

    def case3(self, blocks, loads) -> Extension | None:
        pairs = math.comb(len(self.W), 2)
        floor = (0.25 - 2 * math.sqrt(self.p.delta))
        good = [i for i in np.argsort(-loads, kind="stable")
                if loads[i] >= floor * (blocks[i][1] - blocks[i][0]) * pairs]
        good = good[:CASE3_BLOCK_POOL]
        H, Q = self.H, self.Q
        for trio in itertools.combinations(sorted(good), 3):
            taken = np.zeros(H.n, dtype=bool)
            new_pieces: list[list[int]] = []
            spare: list[int] = []
            for i in trio:
                s, e = blocks[i]
                Wfree = self.W[~taken[self.W]]
                P = tripartite_paths(H, Q[s:e], Wfree, self.p.epsilon)
                block = Q[s:e]
                if P is not None:
                    new_pieces.append(P)
                    taken[P] = True
                    spare += [v for v in block if not taken[v]]
                else:
                    spare += block
            P0 = dense_path_in(H, spare, self.p.beta / 54) if len(spare) >= 3 else None
            if P0:
                new_pieces.append(P0)
            (s1, e1), (s2, e2), (s3, e3) = (blocks[i] for i in trio)
            old = [Q[:s1], Q[e1:s2], Q[e2:s3], Q[e3:]]
            gain = sum(map(len, new_pieces)) + 7 - (e1 - s1) - (e2 - s2) - (e3 - s3)
            if gain < self.p.min_gain:
                continue
            joined = chain_pieces(H, old + new_pieces, self.R, commit=False)
            if joined:
                ext = self.accept(*joined, 3)
                if ext:
                    return ext
        return None


def extend_path(H: Hypergraph3, Q: Sequence[int] | LoosePath | None, R: Reservoir,
                params: ExtensionParams, blocked: frozenset[int] = frozenset()) -> Extension | _Done:
    """Grow ``Q`` by at least ``epsilon * C`` vertices, or report ``DONE``.

    ``blocked`` holds vertices outside the working graph (the absorbing
    path). ``DONE`` is returned once at most ``delta³ n`` vertices are
    uncovered. Reservoir vertices spent by the returned extension are marked
    used in ``R``.
    """
    Q = list(Q.seq if isinstance(Q, LoosePath) else (Q or ()))
    W = uncovered(H, Q, R, blocked)
    if len(W) <= params.delta**3 * H.n:
        return DONE
    step = _Step(H, Q, W, R, params)
    ext = step.case1()
    if ext is None and Q:
        blocks = make_blocks(len(Q), params.C, params.epsilon)
        if blocks:
            loads = step._block_loads(blocks)
            ext = step.case2(blocks, loads)
            if ext is None and len(blocks) >= 3:
                ext = step.case3(blocks, loads)
    if ext is None:
        raise PipelineFailure("extension", "no case applies", uncovered=len(W), path=len(Q))
    assert validate_loose_path(H, ext.path.seq) is None
    R.used.update(ext.consumed)
    return ext
