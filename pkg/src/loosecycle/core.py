"""Immutable 3-uniform hypergraphs and the co-degree queries built on them."""

from __future__ import annotations

import itertools
import math
import threading
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Literal, Sequence

import numpy as np

from .errors import DegenerateInput, H3ParseError, InvalidVertex

Triple = tuple[int, int, int]

# Exhaustive witness search is used while C(n, |W|) stays below this.
EXHAUSTIVE_LIMIT = 10**6
LOCAL_SEARCH_RESTARTS = 32


class Hypergraph3:
    """A 3-uniform hypergraph on vertices ``0..n-1``.

    Edges are kept as sorted triples. A dense boolean adjacency cube
    ``adj[a, b, c]`` (symmetric under permutation) is built lazily on first
    use; it doubles as the pair index, since ``adj[a, b]`` is the
    third-vertex indicator of the pair ``{a, b}``.
    """

    __slots__ = ("_n", "_edges", "_edge_set", "_adj", "_lock", "_pair_masks")

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        if n < 0:
            raise DegenerateInput(f"negative vertex count {n}")
        arr = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges,
                         dtype=np.int64)
        if arr.size == 0:
            arr = np.zeros((0, 3), dtype=np.int64)
        if arr.ndim != 2 or arr.shape[1] != 3:
            raise InvalidVertex("edges must be triples")
        arr = np.sort(arr, axis=1)
        if len(arr):
            if arr.min() < 0 or arr.max() >= n:
                raise InvalidVertex(f"edge vertex out of range 0..{n - 1}")
            if np.any(arr[:, 0] == arr[:, 1]) or np.any(arr[:, 1] == arr[:, 2]):
                raise InvalidVertex("edge with repeated vertex")
            arr = np.unique(arr, axis=0)
        arr.setflags(write=False)
        self._n = n
        self._edges = arr
        self._edge_set: frozenset[Triple] | None = None
        self._adj: np.ndarray | None = None
        self._pair_masks: list[list[int]] | None = None
        self._lock = threading.Lock()

    @classmethod
    def from_adjacency(cls, adj: np.ndarray) -> "Hypergraph3":
        n = adj.shape[0]
        i, j, k = np.nonzero(adj)
        keep = (i < j) & (j < k)
        return cls(n, np.stack([i[keep], j[keep], k[keep]], axis=1))

    @property
    def n(self) -> int:
        return self._n

    @property
    def edge_array(self) -> np.ndarray:
        """Read-only ``(m, 3)`` array of sorted triples in lexicographic order."""
        return self._edges

    @property
    def edges(self) -> frozenset[Triple]:
        if self._edge_set is None:
            self._edge_set = frozenset(tuple(map(int, e)) for e in self._edges)
        return self._edge_set

    @property
    def num_edges(self) -> int:
        return len(self._edges)

    def __len__(self) -> int:
        return len(self._edges)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Hypergraph3):
            return NotImplemented
        return self._n == other._n and np.array_equal(self._edges, other._edges)

    def __hash__(self) -> int:
        return hash((self._n, self._edges.tobytes()))

    def __repr__(self) -> str:
        return f"Hypergraph3(n={self._n}, m={len(self._edges)})"

    @property
    def adj(self) -> np.ndarray:
        """Dense symmetric adjacency cube (read-only)."""
        if self._adj is None:
            with self._lock:
                if self._adj is None:
                    n = self._n
                    cube = np.zeros((n, n, n), dtype=bool)
                    if len(self._edges):
                        a, b, c = self._edges.T
                        for x, y, z in itertools.permutations((a, b, c)):
                            cube[x, y, z] = True
                    cube.setflags(write=False)
                    self._adj = cube
        return self._adj

    def pair_masks(self) -> list[list[int]]:
        """``masks[v][w]`` is the co-neighbourhood of ``{v, w}`` as an int bitset."""
        if self._pair_masks is None:
            n = self._n
            weights = [1 << i for i in range(n)]
            masks = [[0] * n for _ in range(n)]
            for a, b, c in self.edges:
                masks[a][b] |= weights[c]
                masks[b][a] |= weights[c]
                masks[a][c] |= weights[b]
                masks[c][a] |= weights[b]
                masks[b][c] |= weights[a]
                masks[c][b] |= weights[a]
            self._pair_masks = masks
        return self._pair_masks

    def has_edge(self, a: int, b: int, c: int) -> bool:
        n = self._n
        if not (0 <= a < n and 0 <= b < n and 0 <= c < n):
            return False
        return bool(self.adj[a, b, c])

    def codegree_matrix(self) -> np.ndarray:
        return self.adj.sum(axis=2, dtype=np.int64)

    def degrees(self) -> np.ndarray:
        deg = np.zeros(self._n, dtype=np.int64)
        if len(self._edges):
            np.add.at(deg, self._edges.ravel(), 1)
        return deg

    def check_vertex(self, v: int) -> None:
        if not (0 <= v < self._n):
            raise InvalidVertex(f"vertex {v} not in 0..{self._n - 1}")


def _check_distinct_pair(H: Hypergraph3, v: int, w: int) -> None:
    H.check_vertex(v)
    H.check_vertex(w)
    if v == w:
        raise InvalidVertex(f"pair needs two distinct vertices, got {v} twice")


def _vertex_set(H: Hypergraph3, S: Iterable[int]) -> list[int]:
    out = sorted(set(int(s) for s in S))
    for s in out:
        H.check_vertex(s)
    return out


def pair_neighborhood(H: Hypergraph3, v: int, w: int) -> frozenset[int]:
    """Vertices ``u`` with ``{v, w, u}`` an edge."""
    _check_distinct_pair(H, v, w)
    return frozenset(int(u) for u in np.flatnonzero(H.adj[v, w]))


def vertex_link(H: Hypergraph3, v: int) -> frozenset[tuple[int, int]]:
    """Pairs ``{u, u'}`` with ``{v, u, u'}`` an edge, as sorted tuples."""
    H.check_vertex(v)
    a, b = np.nonzero(np.triu(H.adj[v], k=1))
    return frozenset(zip(a.tolist(), b.tolist()))


@dataclass(frozen=True)
class CoDegreeProfile:
    min: int
    histogram: dict[int, int]


def min_codegree(H: Hypergraph3) -> CoDegreeProfile:
    if H.n < 2:
        raise DegenerateInput("co-degree needs at least two vertices")
    cod = H.codegree_matrix()
    iu = np.triu_indices(H.n, k=1)
    values, counts = np.unique(cod[iu], return_counts=True)
    hist = {int(v): int(c) for v, c in zip(values, counts)}
    return CoDegreeProfile(min=int(values[0]), histogram=hist)


def induced(H: Hypergraph3, S: Iterable[int]) -> tuple[Hypergraph3, dict[int, int]]:
    """Sub-hypergraph on ``S`` relabelled to ``0..|S|-1`` in increasing order.

    Returns the hypergraph and the map old label -> new label.
    """
    verts = _vertex_set(H, S)
    relabel = {v: i for i, v in enumerate(verts)}
    if not verts or not len(H.edge_array):
        return Hypergraph3(len(verts)), relabel
    lookup = np.full(H.n, -1, dtype=np.int64)
    lookup[verts] = np.arange(len(verts))
    mapped = lookup[H.edge_array]
    kept = mapped[(mapped >= 0).all(axis=1)]
    return Hypergraph3(len(verts), kept), relabel


def inside_edge_count(H: Hypergraph3, S: Iterable[int]) -> int:
    idx = np.asarray(sorted(set(S)), dtype=np.int64)
    if len(idx) < 3:
        return 0
    return int(H.adj[np.ix_(idx, idx, idx)].sum()) // 6


def cross_count(H: Hypergraph3, V1: Iterable[int], V2: Iterable[int],
                V3: Iterable[int]) -> int:
    """Edges having some assignment of their three vertices into V1, V2, V3."""
    sets = [_vertex_set(H, V) for V in (V1, V2, V3)]
    if not all(sets) or not len(H.edge_array):
        return 0
    member = np.zeros((3, H.n), dtype=bool)
    for i, s in enumerate(sets):
        member[i, s] = True
    E = H.edge_array
    hit = np.zeros(len(E), dtype=bool)
    for p in itertools.permutations(range(3)):
        hit |= member[0, E[:, p[0]]] & member[1, E[:, p[1]]] & member[2, E[:, p[2]]]
    return int(hit.sum())


def link_size_within(H: Hypergraph3, v: int, S: Iterable[int]) -> int:
    """``|N(v) ∩ pairs(S)|``."""
    idx = np.asarray(sorted(set(S)), dtype=np.int64)
    if len(idx) < 2:
        return 0
    return int(H.adj[v][np.ix_(idx, idx)].sum()) // 2


def is_gamma_good_vertex(H: Hypergraph3, v: int, S: Iterable[int], gamma: float) -> bool:
    """Whether the link of ``v`` covers a ``1 - gamma`` share of the pairs of ``S``.

    The denominator is ``C(|S|, 2)`` even when ``v`` lies in ``S``.
    """
    H.check_vertex(v)
    verts = _vertex_set(H, S)
    return link_size_within(H, v, verts) >= (1 - gamma) * math.comb(len(verts), 2)


def is_gamma_good_pair(H: Hypergraph3, v: int, w: int, S: Iterable[int],
                       gamma: float) -> bool:
    _check_distinct_pair(H, v, w)
    verts = _vertex_set(H, S)
    if not verts:
        return True
    common = int(H.adj[v, w, verts].sum())
    return common >= (1 - gamma) * len(verts)


@dataclass(frozen=True)
class ExtremalWitness:
    W: frozenset[int]
    inside_edges: int
    beta_bound: float
    method: Literal["exhaustive", "local-search"]


def witness_size(n: int) -> int:
    return -(-3 * n // 4)


def _exhaustive_witness(H: Hypergraph3, k: int) -> tuple[tuple[int, ...], int]:
    n = H.n
    s = n - k
    m = H.num_edges
    if s == 0:
        return tuple(range(n)), m
    deg = H.degrees()
    cod = H.codegree_matrix()
    adj = H.adj
    best_val = None
    best_w: tuple[int, ...] | None = None
    combos_iter = itertools.combinations(range(n), s)
    chunk = 200_000
    while True:
        flat = np.fromiter(itertools.chain.from_iterable(itertools.islice(combos_iter, chunk)),
                           dtype=np.int64)
        if flat.size == 0:
            break
        C = flat.reshape(-1, s)
        meeting = deg[C].sum(axis=1)
        for i, j in itertools.combinations(range(s), 2):
            meeting -= cod[C[:, i], C[:, j]]
        for i, j, l in itertools.combinations(range(s), 3):
            meeting += adj[C[:, i], C[:, j], C[:, l]]
        inside = m - meeting
        lo = int(inside.min())
        if best_val is None or lo <= best_val:
            for row in C[inside == lo]:
                w = tuple(sorted(set(range(n)) - set(row.tolist())))
                if best_val is None or lo < best_val or w < best_w:
                    best_val, best_w = lo, w
    assert best_w is not None and best_val is not None
    return best_w, best_val


def _local_search_witness(H: Hypergraph3, k: int, budget: int,
                          rng: np.random.Generator) -> tuple[tuple[int, ...], int]:
    n = H.n
    adj = H.adj
    best: tuple[int, tuple[int, ...]] | None = None
    per_restart = max(1, budget // LOCAL_SEARCH_RESTARTS)
    for _ in range(LOCAL_SEARCH_RESTARTS):
        inW = np.zeros(n, dtype=bool)
        inW[rng.choice(n, size=k, replace=False)] = True
        for _ in range(per_restart):
            win = np.flatnonzero(inW)
            wout = np.flatnonzero(~inW)
            sub = adj[:, win][:, :, win]
            d = sub.sum(axis=(1, 2)) // 2
            if len(wout) == 0:
                break
            # swapping x out and y in changes the count by d[y] - |N(x,y) ∩ W| - d[x]
            cw = adj[np.ix_(wout, win, win)].sum(axis=2)
            delta = d[wout][:, None] - cw - d[win][None, :]
            low = delta.min()
            if low >= 0:
                break
            cand = np.argwhere(delta == low)
            yi, xi = cand[rng.integers(len(cand))]
            inW[win[xi]] = False
            inW[wout[yi]] = True
        W = tuple(np.flatnonzero(inW).tolist())
        val = inside_edge_count(H, W)
        if best is None or (val, W) < best:
            best = (val, W)
        if best[0] == 0:
            break
    assert best is not None
    return best[1], best[0]


def extremality_witness(H: Hypergraph3, beta: float, budget: int = 2000,
                        seed: int = 0) -> ExtremalWitness | None:
    """Search for a ``⌈3n/4⌉``-set inducing at most ``beta * n**3`` edges.

    ``None`` is a proof of non-extremality only when the search was
    exhaustive (``C(n, ⌈3n/4⌉) <= EXHAUSTIVE_LIMIT``).
    """
    n = H.n
    if n < 4:
        raise DegenerateInput("extremality needs n >= 4")
    k = witness_size(n)
    if math.comb(n, k) <= EXHAUSTIVE_LIMIT:
        W, val = _exhaustive_witness(H, k)
        method: Literal["exhaustive", "local-search"] = "exhaustive"
    else:
        W, val = _local_search_witness(H, k, budget, np.random.default_rng(seed))
        method = "local-search"
    if val <= beta * n**3:
        return ExtremalWitness(frozenset(W), val, beta, method)
    return None


def write_h3(H: Hypergraph3) -> str:
    lines = [f"{H.n} {H.num_edges}"]
    lines.extend(f"{a} {b} {c}" for a, b, c in H.edge_array.tolist())
    return "\n".join(lines) + "\n"


def parse_h3(text: str, strict: bool = True) -> Hypergraph3:
    """Parse the ``.h3`` text format.

    Strict mode rejects unsorted triples and duplicate edges; lenient mode
    sorts and de-duplicates them.
    """
    lines = text.splitlines()
    if not lines:
        raise H3ParseError("empty input")
    try:
        header = [int(t) for t in lines[0].split()]
    except ValueError as exc:
        raise H3ParseError(f"line 1: {exc}") from None
    if len(header) != 2 or header[0] < 0 or header[1] < 0:
        raise H3ParseError("line 1 must be 'n m'")
    n, m = header
    body = lines[1:]
    if strict and text and not text.endswith("\n"):
        raise H3ParseError("missing trailing newline")
    if len(body) != m:
        raise H3ParseError(f"header announces {m} edges, found {len(body)} lines")
    edges: list[Triple] = []
    for lineno, line in enumerate(body, start=2):
        toks = line.split()
        if len(toks) != 3:
            raise H3ParseError(f"line {lineno}: expected three vertices")
        try:
            a, b, c = (int(t) for t in toks)
        except ValueError:
            raise H3ParseError(f"line {lineno}: non-integer token") from None
        if min(a, b, c) < 0 or max(a, b, c) >= n:
            raise H3ParseError(f"line {lineno}: vertex out of range")
        if len({a, b, c}) != 3:
            raise H3ParseError(f"line {lineno}: repeated vertex")
        if strict and not (a < b < c):
            raise H3ParseError(f"line {lineno}: triple not sorted")
        edges.append(tuple(sorted((a, b, c))))  # type: ignore[arg-type]
    if strict:
        dup = [e for e, c in Counter(edges).items() if c > 1]
        if dup:
            raise H3ParseError(f"duplicate edge {dup[0]}")
    return Hypergraph3(n, edges)


def read_h3(path, strict: bool = True) -> Hypergraph3:
    with open(path, encoding="ascii") as fh:
        return parse_h3(fh.read(), strict=strict)


def save_h3(H: Hypergraph3, path) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(write_h3(H))
