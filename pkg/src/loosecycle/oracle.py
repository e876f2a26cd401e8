"""Exact small-n procedures: Hamilton loose cycles, absorber enumeration, dense paths."""

from __future__ import annotations

import enum
import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .core import Hypergraph3, _check_distinct_pair
from .structures import LooseCycle, LoosePath

DEFAULT_ORACLE_LIMIT = 16


class OracleStatus(str, enum.Enum):
    CYCLE = "cycle"
    NONE = "proven-none"
    CAP_EXCEEDED = "cap-exceeded"


@dataclass(frozen=True)
class OracleResult:
    status: OracleStatus
    cycle: LooseCycle | None = None


def _search_from(masks: list[list[int]], n: int, v1: int) -> tuple[int, ...] | None:
    """Hamilton loose cycles whose smallest link vertex is ``v1``."""
    full = (1 << n) - 1
    links_ok = full & ~((1 << (v1 + 1)) - 1)  # link vertices other than v1 exceed it
    row1 = masks[v1]
    for v2 in range(n):
        if v2 == v1:
            continue
        firsts = row1[v2] & links_ok
        if not firsts:
            continue
        dead: set[tuple[int, int]] = set()
        seq = [v1, v2]

        def dfs(used: int, end: int) -> bool:
            free = full & ~used
            if free & (free - 1) == 0:
                r = free.bit_length() - 1
                # closing edge {v_{n-1}, v_n, v_1}; v_2 < v_n fixes orientation
                if v2 < r and (masks[end][r] >> v1) & 1:
                    seq.append(r)
                    return True
                return False
            key = (used, end)
            if key in dead:
                return False
            row = masks[end]
            rest = free
            while rest:
                low = rest & -rest
                rest ^= low
                a = low.bit_length() - 1
                cand = row[a] & free & links_ok & ~low
                while cand:
                    lb = cand & -cand
                    cand ^= lb
                    b = lb.bit_length() - 1
                    seq.append(a)
                    seq.append(b)
                    if dfs(used | low | lb, b):
                        return True
                    seq.pop()
                    seq.pop()
            dead.add(key)
            return False

        while firsts:
            lb = firsts & -firsts
            firsts ^= lb
            v3 = lb.bit_length() - 1
            seq.append(v3)
            if dfs((1 << v1) | (1 << v2) | lb, v3):
                return tuple(seq)
            seq.pop()
    return None


def _branch(args):
    masks, n, v1 = args
    return _search_from(masks, n, v1)


def find_hamilton_cycle(H: Hypergraph3, limit: int = DEFAULT_ORACLE_LIMIT,
                        jobs: int = 1) -> OracleResult:
    """Decide whether ``H`` has a loose Hamilton cycle by exhaustive search.

    Branches on the smallest link vertex ``v1``; every later link vertex must
    exceed it, partial paths whose failure from ``(used, end)`` is already
    known are cut, and the orientation with ``v2 < v_n`` is the only one
    explored. With ``jobs > 1`` the ``v1`` branches run in worker processes;
    the reported cycle is still the one from the smallest successful ``v1``.
    """
    n = H.n
    if n > limit:
        return OracleResult(OracleStatus.CAP_EXCEEDED)
    if n % 2 or n < 6:
        return OracleResult(OracleStatus.NONE)
    masks = H.pair_masks()
    # the smallest link vertex is at most n - n/2
    branches = list(range(n // 2 + 1))
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            found = list(pool.map(_branch, [(masks, n, v1) for v1 in branches]))
    else:
        found = []
        for v1 in branches:
            hit = _search_from(masks, n, v1)
            found.append(hit)
            if hit is not None:
                break
    for hit in found:
        if hit is not None:
            return OracleResult(OracleStatus.CYCLE, LooseCycle(hit))
    return OracleResult(OracleStatus.NONE)


@dataclass(frozen=True)
class AbsorberWitness:
    """Five vertices ``u1..u5`` absorbing the ordered pair ``(v, v')``.

    ``short_path`` is ``u1 u2 u3 u4 u5`` and ``long_path`` is
    ``u1 v u2 v' u4 u3 u5``; both run from ``u1`` to ``u5``.
    """

    five: tuple[int, int, int, int, int]
    pair: tuple[int, int]

    @property
    def short_path(self) -> tuple[int, ...]:
        return self.five

    @property
    def long_path(self) -> tuple[int, ...]:
        u1, u2, u3, u4, u5 = self.five
        v, w = self.pair
        return (u1, v, u2, w, u4, u3, u5)

    @property
    def endpoints(self) -> tuple[int, int]:
        return self.five[0], self.five[4]


@dataclass(frozen=True)
class AbsorberCount:
    count: int
    witnesses: list[AbsorberWitness] = field(default_factory=list)


def enumerate_absorbers(H: Hypergraph3, v: int, w: int) -> AbsorberCount:
    """All 5-subsets of ``V - {v, w}`` admitting an absorber ordering for ``(v, w)``.

    An ordering needs the edges ``{u1,u2,u3}``, ``{u3,u4,u5}``, ``{u1,v,u2}``
    and ``{u2,w,u4}``. Each counted set carries its lexicographically first
    ordering.
    """
    _check_distinct_pair(H, v, w)
    D = np.array([x for x in range(H.n) if x not in (v, w)], dtype=np.int64)
    d = len(D)
    if d < 5 or H.num_edges == 0:
        return AbsorberCount(0, [])
    A = H.adj[np.ix_(D, D, D)]
    Nv = H.adj[v][np.ix_(D, D)]
    Nw = H.adj[w][np.ix_(D, D)]
    ne = ~np.eye(d, dtype=bool)
    first: dict[int, tuple[int, ...]] = {}
    powers = d ** np.arange(4, -1, -1, dtype=np.int64)
    # axes of each block below: (u2, u3, u4, u5) with u1 fixed
    for i in range(d):
        head = A[i] & Nv[i][:, None]                      # (u2, u3)
        if not head.any():
            continue
        cond = (head[:, :, None, None]
                & A[None, :, :, :]                        # {u3, u4, u5}
                & Nw[:, None, :, None]                    # {u2, w, u4}
                & ne[i][None, None, :, None]              # u1 != u4
                & ne[i][None, None, None, :]              # u1 != u5
                & ne[:, None, None, :])                   # u2 != u5
        idx = np.nonzero(cond)
        if not len(idx[0]):
            continue
        rows = np.stack([np.full(len(idx[0]), i), *idx], axis=1)
        keys = np.sort(rows, axis=1) @ powers
        uniq, pos = np.unique(keys, return_index=True)
        for key, p in zip(uniq.tolist(), pos.tolist()):
            if key not in first:
                first[key] = tuple(int(D[x]) for x in rows[p])
    witnesses = [AbsorberWitness(five, (v, w)) for five in first.values()]  # type: ignore[arg-type]
    witnesses.sort(key=lambda a: a.five)
    return AbsorberCount(len(witnesses), witnesses)


def _surviving_core(H: Hypergraph3, verts: Sequence[int], threshold: float) -> np.ndarray:
    """Repeatedly drop vertices whose link inside the survivors is below ``threshold``."""
    alive = np.asarray(sorted(verts), dtype=np.int64)
    while len(alive):
        sub = H.adj[np.ix_(alive, alive, alive)]
        link = sub.sum(axis=(1, 2)) // 2
        keep = link >= threshold
        if keep.all():
            break
        alive = alive[keep]
    return alive


def greedy_loose_path(H: Hypergraph3, verts: Iterable[int],
                      start: int | None = None) -> list[int] | None:
    """Grow a maximal loose path inside ``verts`` by endpoint extension.

    Starts from ``start`` (default: the smallest vertex with an edge inside
    ``verts``) and always takes the lexicographically smallest free pair.
    """
    allowed = np.zeros(H.n, dtype=bool)
    allowed[list(verts)] = True
    adj = H.adj

    def extension(x: int, free: np.ndarray) -> tuple[int, int] | None:
        idx = np.flatnonzero(free)
        if len(idx) < 2:
            return None
        hits = np.argwhere(np.triu(adj[x][np.ix_(idx, idx)], k=1))
        if not len(hits):
            return None
        a, b = hits[0]
        return int(idx[a]), int(idx[b])

    if start is None:
        cands = np.flatnonzero(allowed)
        for s in cands:
            free = allowed.copy()
            free[s] = False
            if extension(int(s), free) is not None:
                start = int(s)
                break
        else:
            return None
    free = allowed.copy()
    free[start] = False
    step = extension(start, free)
    if step is None:
        return None
    path = [start, *step]
    free[list(step)] = False
    grow_back = True
    grow_front = True
    while grow_back or grow_front:
        if grow_back:
            step = extension(path[-1], free)
            if step is None:
                grow_back = False
            else:
                path.extend(step)
                free[list(step)] = False
        if grow_front:
            step = extension(path[0], free)
            if step is None:
                grow_front = False
            else:
                path[:0] = [step[1], step[0]]
                free[list(step)] = False
    return path


def dense_path_in(H: Hypergraph3, verts: Sequence[int], gamma: float) -> list[int] | None:
    """Prune ``verts`` to vertices with link ``>= gamma * |verts|**2`` inside, then grow a path."""
    verts = sorted(set(verts))
    core = _surviving_core(H, verts, gamma * len(verts) ** 2)
    if not len(core):
        return None
    return greedy_loose_path(H, core.tolist())


def claim3_path(H: Hypergraph3, gamma: float) -> LoosePath | None:
    """A loose path from the pruned dense core of ``H``.

    If ``|H| >= gamma * n**3`` the result has at least ``gamma * n`` vertices.
    """
    seq = dense_path_in(H, range(H.n), gamma)
    return LoosePath(seq) if seq else None
