"""Loose paths and loose cycles in 3-graphs.

A loose path is a sequence ``v1 .. v_{2m+1}`` whose edges are the triples
starting at every even 0-based index; consecutive edges share one vertex.
A loose cycle ``v1 .. v_{2m}`` additionally has the closing edge
``{v1, v_{2m}, v_{2m-1}}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import Hypergraph3, Triple
from .errors import PreconditionViolation


@dataclass(frozen=True)
class Violation:
    """Why a sequence failed validation.

    ``kind`` is one of ``parity``, ``min-length``, ``duplicate``,
    ``invalid-vertex`` or ``missing-edge``; ``index`` is the 0-based edge
    index for ``missing-edge``.
    """

    kind: str
    detail: str
    index: int | None = None
    edge: Triple | None = None

    def __str__(self) -> str:
        return f"violation({self.kind}): {self.detail}"


def _sorted_triple(a: int, b: int, c: int) -> Triple:
    return tuple(sorted((a, b, c)))  # type: ignore[return-value]


def path_edges(seq: Sequence[int]) -> list[Triple]:
    return [_sorted_triple(seq[i], seq[i + 1], seq[i + 2]) for i in range(0, len(seq) - 2, 2)]


def cycle_edges(seq: Sequence[int]) -> list[Triple]:
    return path_edges(seq[:-1]) + [_sorted_triple(seq[0], seq[-1], seq[-2])]


@dataclass(frozen=True)
class LoosePath:
    seq: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "seq", tuple(int(v) for v in self.seq))
        bad = _shape_violation(self.seq, cycle=False)
        if bad is not None:
            raise ValueError(str(bad))

    @property
    def m(self) -> int:
        return (len(self.seq) - 1) // 2

    @property
    def first(self) -> int:
        return self.seq[0]

    @property
    def last(self) -> int:
        return self.seq[-1]

    @property
    def endpoints(self) -> tuple[int, int]:
        return self.seq[0], self.seq[-1]

    def edges(self) -> list[Triple]:
        return path_edges(self.seq)

    def vertices(self) -> frozenset[int]:
        return frozenset(self.seq)

    def reversed(self) -> "LoosePath":
        return LoosePath(self.seq[::-1])

    def __len__(self) -> int:
        return len(self.seq)

    def __iter__(self):
        return iter(self.seq)


@dataclass(frozen=True)
class LooseCycle:
    seq: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "seq", tuple(int(v) for v in self.seq))
        bad = _shape_violation(self.seq, cycle=True)
        if bad is not None:
            raise ValueError(str(bad))

    @property
    def m(self) -> int:
        return len(self.seq) // 2

    def edges(self) -> list[Triple]:
        return cycle_edges(self.seq)

    def vertices(self) -> frozenset[int]:
        return frozenset(self.seq)

    def link_vertices(self) -> tuple[int, ...]:
        """Vertices lying in two edges (even 0-based positions)."""
        return self.seq[::2]

    def __len__(self) -> int:
        return len(self.seq)

    def __iter__(self):
        return iter(self.seq)


def _shape_violation(seq: Sequence[int], cycle: bool) -> Violation | None:
    k = len(seq)
    if cycle:
        if k % 2:
            return Violation("parity", f"cycle length {k} is odd")
        if k < 6:
            return Violation("min-length", f"cycle length {k} < 6 (m >= 3 required)")
    else:
        if k % 2 == 0:
            return Violation("parity", f"path length {k} is even")
        if k < 3:
            return Violation("min-length", f"path length {k} < 3")
    seen: set[int] = set()
    for v in seq:
        if v in seen:
            return Violation("duplicate", f"vertex {v} repeated")
        seen.add(v)
    return None


def _edges_violation(H: Hypergraph3, seq: Sequence[int], edges: list[Triple]) -> Violation | None:
    for v in seq:
        if not (0 <= v < H.n):
            return Violation("invalid-vertex", f"vertex {v} not in 0..{H.n - 1}")
    for i, e in enumerate(edges):
        if not H.has_edge(*e):
            return Violation("missing-edge", f"edge {i} {set(e)} not in H", index=i, edge=e)
    return None


def validate_loose_path(H: Hypergraph3, seq: Iterable[int]) -> Violation | None:
    """``None`` when ``seq`` is a loose path of ``H``, else the first violation."""
    seq = tuple(seq)
    return _shape_violation(seq, cycle=False) or _edges_violation(H, seq, path_edges(seq))


def validate_loose_cycle(H: Hypergraph3, seq: Iterable[int]) -> Violation | None:
    seq = tuple(seq)
    return _shape_violation(seq, cycle=True) or _edges_violation(H, seq, cycle_edges(seq))


def is_hamilton(H: Hypergraph3, c: LooseCycle | Sequence[int]) -> bool:
    seq = c.seq if isinstance(c, LooseCycle) else tuple(c)
    return len(seq) == H.n


def connect(P: LoosePath, Q: LoosePath, v: int, H: Hypergraph3) -> LoosePath:
    """Join ``P`` and ``Q`` through ``v`` using the edge ``{last(P), v, first(Q)}``."""
    if P.vertices() & Q.vertices():
        raise PreconditionViolation("disjointness", "P and Q share vertices")
    if v in P.vertices() or v in Q.vertices():
        raise PreconditionViolation("disjointness", f"bridge vertex {v} lies on P or Q")
    if not H.has_edge(P.last, v, Q.first):
        raise PreconditionViolation("edge", f"{{{P.last}, {v}, {Q.first}}} is not an edge")
    return LoosePath(P.seq + (v,) + Q.seq)


def format_sequence(seq: Iterable[int]) -> str:
    return " ".join(str(v) for v in seq)


def parse_sequence(text: str) -> tuple[int, ...]:
    return tuple(int(t) for t in text.replace(",", " ").split())
