"""Absorbing path: disjoint absorbers chained into one loose path."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from ..core import Hypergraph3
from ..errors import PipelineFailure, PreconditionViolation
from ..oracle import AbsorberWitness
from ..structures import LoosePath, validate_loose_path
from .matching import max_bipartite_matching

# Interior slots x2..x6 of a 7-vertex path x1..x7; "a"/"b" mark the absorbed pair.
_INTERIOR_LAYOUTS: list[tuple[object, ...]] = []
for _ab in itertools.permutations(range(5), 2):
    for _mid in itertools.permutations(range(3)):
        slots: list[object] = [None] * 5
        slots[_ab[0]], slots[_ab[1]] = "a", "b"
        rest = iter(_mid)
        _INTERIOR_LAYOUTS.append(tuple(s if s is not None else next(rest) for s in slots))


@dataclass(frozen=True)
class AbsorbingStructure:
    """A loose path built from vertex-disjoint absorbers.

    Each family member's ``short_path`` is a contiguous piece of ``path``.
    ``absorbs[i, a, b]`` says member ``i`` can swap its 5-vertex piece for a
    7-vertex path through ``{a, b}`` with the same endpoints.
    """

    path: LoosePath
    family: tuple[AbsorberWitness, ...]
    capacity: int
    absorbs: np.ndarray = field(repr=False, compare=False)
    attempts: int = field(default=1, compare=False)

    def vertices(self) -> frozenset[int]:
        return self.path.vertices()


def _seven_path_terms(ends: tuple[int, int], mids: Sequence[int], layout, a, b):
    x1, x7 = ends
    inner = [a if s == "a" else b if s == "b" else mids[s] for s in layout]
    return [x1, *inner, x7]


def absorbable_pairs(H: Hypergraph3, member: AbsorberWitness) -> np.ndarray:
    """Symmetric ``(n, n)`` mask of pairs the member can swallow."""
    n = H.n
    adj = H.adj
    u = member.five
    ends = (u[0], u[4])
    mids = (u[1], u[2], u[3])
    A = np.arange(n)[:, None]
    B = np.arange(n)[None, :]
    out = np.zeros((n, n), dtype=bool)
    for layout in _INTERIOR_LAYOUTS:
        x = _seven_path_terms(ends, mids, layout, A, B)
        ok = adj[x[0], x[1], x[2]] & adj[x[2], x[3], x[4]] & adj[x[4], x[5], x[6]]
        out |= ok
    out |= out.T
    out[np.arange(n), np.arange(n)] = False
    out[list(u), :] = False
    out[:, list(u)] = False
    return out


def long_path_for(H: Hypergraph3, member: AbsorberWitness, a: int, b: int) -> tuple[int, ...] | None:
    """A 7-vertex loose path on ``member ∪ {a, b}`` from ``u1`` to ``u5``."""
    u = member.five
    ends = (u[0], u[4])
    mids = (u[1], u[2], u[3])
    for layout in _INTERIOR_LAYOUTS:
        seq = _seven_path_terms(ends, mids, layout, a, b)
        if H.has_edge(*seq[0:3]) and H.has_edge(*seq[2:5]) and H.has_edge(*seq[4:7]):
            return tuple(seq)
    return None


def _absorber_ordering(H: Hypergraph3, S: Sequence[int]) -> AbsorberWitness | None:
    """First ordering of ``S`` that absorbs some outside pair, or ``None``."""
    adj = H.adj
    outside = np.ones(H.n, dtype=bool)
    outside[list(S)] = False
    for u1, u2, u3, u4, u5 in itertools.permutations(sorted(S)):
        if not (adj[u1, u2, u3] and adj[u3, u4, u5]):
            continue
        vs = np.flatnonzero(adj[u1, u2] & outside)
        ws = np.flatnonzero(adj[u2, u4] & outside)
        for v in vs:
            for w in ws:
                if v != w:
                    return AbsorberWitness((u1, u2, u3, u4, u5), (int(v), int(w)))
    return None


def family_target(delta: float, n: int) -> int:
    # k absorbers and k - 1 bridges occupy 6k - 1 <= delta * n vertices
    return int((delta * n + 1) // 6)


def capacity_target(delta: float, n: int, family_size: int) -> int:
    return max(1, min(family_size, math.ceil(delta**3 * n)))


def _chain_members(H: Hypergraph3, family: list[AbsorberWitness],
                   rng: np.random.Generator) -> list[int] | None:
    taken = np.zeros(H.n, dtype=bool)
    for f in family:
        taken[list(f.five)] = True
    seq = list(family[0].five)
    for f in family[1:]:
        for piece in (f.five, f.five[::-1]):
            cands = np.flatnonzero(H.adj[seq[-1], piece[0]] & ~taken)
            if len(cands):
                v = int(rng.choice(cands))
                taken[v] = True
                seq.append(v)
                seq.extend(piece)
                break
        else:
            return None
    return seq


def build_absorbing_path(H: Hypergraph3, delta: float, seed: int,
                         retries: int = 64) -> AbsorbingStructure:
    """Sample disjoint absorbers, check their coverage and chain them.

    Random 5-sets are drawn one at a time; a draw meeting an earlier member
    or absorbing no pair is thrown away. The family is accepted when every
    pair outside the path is absorbable by at least ``capacity_target``
    members, then chained through fresh bridge vertices.
    """
    n = H.n
    target = family_target(delta, n)
    if target < 1:
        raise PipelineFailure("absorbing", "delta * n leaves no room for an absorber",
                              reason="no-room", delta=delta, n=n)
    stage = "no-absorbers"
    worst = None
    for attempt in range(retries):
        rng = np.random.default_rng([seed, attempt])
        family: list[AbsorberWitness] = []
        used = np.zeros(n, dtype=bool)
        for _ in range(20 * target):
            if len(family) == target:
                break
            S = rng.choice(n, size=5, replace=False)
            if used[S].any():
                continue
            member = _absorber_ordering(H, S.tolist())
            if member is None:
                continue
            family.append(member)
            used[S] = True
        if not family:
            stage = "no-absorbers"
            continue
        seq = _chain_members(H, family, rng)
        if seq is None:
            stage = "connect"
            continue
        masks = np.stack([absorbable_pairs(H, f) for f in family])
        outside = np.ones(n, dtype=bool)
        outside[seq] = False
        idx = np.flatnonzero(outside)
        need = capacity_target(delta, n, len(family))
        if len(idx) >= 2:
            counts = masks[:, idx][:, :, idx].sum(axis=0)
            counts[np.arange(len(idx)), np.arange(len(idx))] = need
            low = int(counts.min())
            if low < need:
                stage = "capacity"
                a, b = np.unravel_index(int(counts.argmin()), counts.shape)
                worst = (int(idx[a]), int(idx[b]), low)
                continue
        path = LoosePath(seq)
        assert validate_loose_path(H, path.seq) is None
        return AbsorbingStructure(path, tuple(family), len(family), masks, attempt + 1)
    raise PipelineFailure("absorbing", f"{stage} after {retries} attempts", reason=stage,
                          worst_pair=worst)


def absorb(A: AbsorbingStructure, H: Hypergraph3, S: Iterable[int]) -> LoosePath:
    """Swallow the even set ``S`` into ``A.path`` keeping its endpoints.

    ``S`` is split into pairs, each pair is matched to a distinct member that
    absorbs it, and each matched member's 5-vertex piece is replaced by its
    7-vertex path. A few re-pairings are tried before giving up.
    """
    S = sorted(set(int(s) for s in S))
    if len(S) % 2:
        raise PreconditionViolation("parity", f"|S| = {len(S)} is odd")
    if set(S) & A.vertices():
        raise PreconditionViolation("disjointness", "S meets the absorbing path")
    if not S:
        return A.path
    if len(S) // 2 > A.capacity:
        raise PipelineFailure("absorb", "capacity-exceeded", reason="capacity-exceeded",
                              pairs=len(S) // 2, capacity=A.capacity)
    rng = np.random.default_rng(S)
    order = list(S)
    unmatched = None
    for _ in range(32):
        pairs = [(order[i], order[i + 1]) for i in range(0, len(order), 2)]
        graph = {p: [i for i in range(len(A.family)) if A.absorbs[i, p[0], p[1]]] for p in pairs}
        matching = max_bipartite_matching(graph)
        if len(matching) == len(pairs):
            return _splice(A, H, matching)
        unmatched = next(p for p in pairs if p not in matching)
        order = rng.permutation(S).tolist()
    raise PipelineFailure("absorb", "unmatchable-pair", reason="unmatchable-pair",
                          pair=unmatched)


def _splice(A: AbsorbingStructure, H: Hypergraph3,
            matching: dict[tuple[int, int], int]) -> LoosePath:
    seq = list(A.path.seq)
    pos = {v: i for i, v in enumerate(seq)}
    replacements: list[tuple[int, tuple[int, ...]]] = []
    for (a, b), i in matching.items():
        member = A.family[i]
        long = long_path_for(H, member, a, b)
        assert long is not None
        i1, i5 = pos[member.five[0]], pos[member.five[4]]
        if i1 > i5:
            i1, i5, long = i5, i1, long[::-1]
        replacements.append((i1, long))
    for start, long in sorted(replacements, reverse=True):
        seq[start:start + 5] = long
    return LoosePath(seq)
