"""Connecting reservoir and the path-joining helpers that draw on it."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from ..core import Hypergraph3
from ..errors import PipelineFailure
from .absorbing import AbsorbingStructure


@dataclass
class Reservoir:
    """Vertices set aside for joining path pieces; ``used`` grows as they are spent."""

    verts: frozenset[int]
    threshold: int
    used: set[int] = field(default_factory=set)
    attempts: int = field(default=1, compare=False)

    def unused(self) -> list[int]:
        return sorted(self.verts - self.used)

    def bridge(self, H: Hypergraph3, x: int, y: int) -> int | None:
        """Smallest unused reservoir vertex completing ``{x, y}`` to an edge."""
        row = H.adj[x, y]
        for r in self.unused():
            if row[r] and r != x and r != y:
                return r
        return None


def reservoir_size(delta: float, n: int) -> int:
    return int(delta**3 * n + 1e-9)


def reservoir_threshold(delta: float, n: int) -> int:
    return max(2, int(2 * delta**4 * n + 1e-9))


def select_reservoir(H: Hypergraph3, A: AbsorbingStructure | None, delta: float,
                     seed: int, retries: int = 64, *, size: int | None = None,
                     threshold: int | None = None) -> Reservoir:
    """Sample ``⌊delta³ n⌋`` vertices off the absorbing path.

    Accepted once every pair of vertices outside the sample has at least
    ``max(2, ⌊2 delta⁴ n⌋)`` co-neighbours inside it. ``size`` and
    ``threshold`` override the two formulas.
    """
    n = H.n
    size = reservoir_size(delta, n) if size is None else size
    threshold = reservoir_threshold(delta, n) if threshold is None else threshold
    blocked = A.vertices() if A is not None else frozenset()
    pool = np.array([v for v in range(n) if v not in blocked], dtype=np.int64)
    if size > len(pool):
        raise PipelineFailure("reservoir", "not enough free vertices", reason="resev-violated",
                              size=size, free=len(pool))
    worst = None
    for attempt in range(retries):
        rng = np.random.default_rng([seed, 1, attempt])
        R = np.sort(rng.choice(pool, size=size, replace=False))
        rest = np.setdiff1d(np.arange(n), R)
        if size and len(rest) >= 2:
            counts = H.adj[np.ix_(rest, rest, R)].sum(axis=2)
            counts[np.arange(len(rest)), np.arange(len(rest))] = threshold
            low = int(counts.min())
        else:
            low = 0 if len(rest) >= 2 else threshold
        if low >= threshold:
            return Reservoir(frozenset(R.tolist()), threshold, attempts=attempt + 1)
        a, b = np.unravel_index(int(counts.argmin()), counts.shape) if size else (0, 1)
        worst = (int(rest[a]), int(rest[b]), low)
    raise PipelineFailure("reservoir", f"threshold {threshold} violated", reason="resev-violated",
                          pair=worst, size=size, threshold=threshold)


def chain_pieces(H: Hypergraph3, pieces: Sequence[Sequence[int]], R: Reservoir,
                 commit: bool = True) -> tuple[list[int], list[int]] | None:
    """Join path pieces end to end, one reservoir vertex per junction.

    Pieces may be single vertices. Each piece after the first may be
    reversed, and so may the growing path, whichever admits a bridge.
    Returns the joined sequence and the bridges used; reservoir usage is
    only recorded when ``commit`` is set.
    """
    pieces = [list(p) for p in pieces if len(p)]
    if not pieces:
        return None
    spent: set[int] = set()
    seq = pieces[0]
    bridges: list[int] = []
    for nxt in pieces[1:]:
        for left, right in ((seq, nxt), (seq, nxt[::-1]), (seq[::-1], nxt), (seq[::-1], nxt[::-1])):
            row = H.adj[left[-1], right[0]]
            r = next((r for r in R.unused() if r not in spent and row[r]), None)
            if r is not None:
                spent.add(r)
                bridges.append(r)
                seq = left + [r] + right
                break
        else:
            return None
    if commit:
        R.used.update(bridges)
    return seq, bridges
