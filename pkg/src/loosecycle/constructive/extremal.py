"""Pipeline for graphs close to the extremal construction.

A sparse ``⌈3n/4⌉``-set ``W`` splits the vertices into a ``U`` side and a
``W`` side. Exceptional vertices are swept into a short special path whose
ends lie in ``U``; the remainder is covered by a spanning path in which every
edge has one vertex in ``U`` and two in ``W``.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from ..core import ExtremalWitness, Hypergraph3, extremality_witness
from ..errors import PipelineFailure, PreconditionViolation
from ..structures import LoosePath, validate_loose_path
from .config import SolveConfig, SolveReport
from .matching import max_bipartite_matching

ACCEPT = 1 / 16
ATTEMPT_STRIDE = 7919


@dataclass(frozen=True)
class ExtremalPartition:
    """Classified split of ``V``.

    ``U2``/``W2`` are the good cores (``U''``, ``W''``); ``U1``/``W1`` are the
    exceptional vertices reassigned by acceptability (``U'``, ``W'``).
    """

    U: frozenset[int]
    W: frozenset[int]
    U1: frozenset[int]
    U2: frozenset[int]
    W1: frozenset[int]
    W2: frozenset[int]
    p1: int
    p2: int
    sigma: float

    @property
    def u_side(self) -> frozenset[int]:
        return self.U1 | self.U2

    @property
    def w_side(self) -> frozenset[int]:
        return self.W1 | self.W2

    def balance(self) -> tuple[int, int]:
        """Both sides of ``3|U' ∪ U''| + 4 p1 - 2 p2 = |W' ∪ W''|``."""
        return 3 * len(self.u_side) + 4 * self.p1 - 2 * self.p2, len(self.w_side)


def _pair_counts_in(H: Hypergraph3, verts: np.ndarray, S: np.ndarray) -> np.ndarray:
    """``out[i] = |N(verts[i]) ∩ C(S, 2)|``."""
    return H.adj[np.ix_(verts, S, S)].sum(axis=(1, 2)) // 2


def acceptability(H: Hypergraph3, v: int, U: np.ndarray, W: np.ndarray,
                  alpha: float = ACCEPT) -> tuple[bool, bool]:
    """Whether ``v`` is ``alpha``-acceptable for ``U`` and for ``W``."""
    n = H.n
    for_u = int(_pair_counts_in(H, np.array([v]), W)[0]) >= alpha * n * n
    common_u = H.adj[v][np.ix_(W, U)].sum(axis=1)
    for_w = int((common_u >= alpha * n).sum()) >= alpha * n
    return for_u, for_w


def classify_extremal(H: Hypergraph3, beta: float,
                      witness: ExtremalWitness | None = None,
                      seed: int = 0, budget: int = 2000) -> ExtremalPartition | None:
    """Split ``V`` into good cores and reassigned exceptional vertices.

    Returns ``None`` when no sparse witness exists or more than ``sigma n``
    vertices are exceptional. Raises ``PipelineFailure`` with reason
    ``classification-failed`` when an exceptional vertex is acceptable for
    neither side.
    """
    n = H.n
    if witness is None:
        witness = extremality_witness(H, beta, budget, seed)
        if witness is None:
            return None
    sigma = (50 * beta) ** 0.25
    s2 = sigma**2
    W = np.array(sorted(witness.W), dtype=np.int64)
    U = np.array(sorted(set(range(n)) - witness.W), dtype=np.int64)
    pairs_w = math.comb(len(W), 2)
    adj = H.adj
    bad_u = U[_pair_counts_in(H, U, W) < (1 - s2) * pairs_w]
    common = adj[np.ix_(W, W, U)].sum(axis=2)
    good = common >= (1 - s2) * len(U)
    np.fill_diagonal(good, False)
    bad_w = W[good.sum(axis=1) < (1 - sigma) * len(W)]
    exceptional = sorted(set(bad_u.tolist()) | set(bad_w.tolist()))
    if len(exceptional) > sigma * n:
        return None
    U1: set[int] = set()
    W1: set[int] = set()
    for v in exceptional:
        for_u, for_w = acceptability(H, v, U, W)
        if for_u:
            U1.add(v)
        elif for_w:
            W1.add(v)
        else:
            raise PipelineFailure("classification", f"vertex {v} is acceptable for neither side",
                                  reason="classification-failed", vertex=v)
    U2 = frozenset(U.tolist()) - frozenset(bad_u.tolist())
    W2 = frozenset(W.tolist()) - frozenset(bad_w.tolist())
    u_size = len(U1) + len(U2)
    p1 = -(-n // 4) - u_size if 4 * u_size < n else 0
    twice_p2 = 4 * (u_size + p1) - n
    if twice_p2 % 2:
        raise PipelineFailure("classification", "odd n has no integral padding",
                              reason="parity", n=n)
    part = ExtremalPartition(frozenset(U.tolist()), frozenset(W.tolist()), frozenset(U1), U2,
                             frozenset(W1), W2, p1, twice_p2 // 2, sigma)
    lhs, rhs = part.balance()
    assert lhs == rhs, (lhs, rhs)
    return part


# -- special path -----------------------------------------------------------


class _Builder:
    """Vertex bookkeeping and gadget search for the special path."""

    def __init__(self, H: Hypergraph3, part: ExtremalPartition, rng: np.random.Generator):
        self.H = H
        self.adj = H.adj
        self.part = part
        self.rng = rng
        self.used = np.zeros(H.n, dtype=bool)
        self.in_u2 = np.zeros(H.n, dtype=bool)
        self.in_u2[list(part.U2)] = True
        self.in_w2 = np.zeros(H.n, dtype=bool)
        self.in_w2[list(part.W2)] = True

    def take(self, *vs: int) -> None:
        assert not self.used[list(vs)].any()
        self.used[list(vs)] = True

    def _free(self, mask: np.ndarray, exclude=()) -> np.ndarray:
        free = mask & ~self.used
        free[list(exclude)] = False
        idx = np.flatnonzero(free)
        return idx[self.rng.permutation(len(idx))]

    def free_w(self, exclude=()) -> np.ndarray:
        return self._free(self.in_w2, exclude)

    def free_u(self, exclude=()) -> np.ndarray:
        return self._free(self.in_u2, exclude)

    def fail(self, stage: str, starved: str):
        raise PipelineFailure("special-path", f"{stage}: no unused {starved} fits",
                              reason="construction-failed", piece=stage, starved=starved)

    def step_wu(self, x: int, stage: str) -> tuple[int, int]:
        """Unused ``w ∈ W''``, ``u ∈ U''`` with ``{x, w, u} ∈ H``."""
        Wf, Uf = self.free_w((x,)), self.free_u((x,))
        hits = np.argwhere(self.adj[x][np.ix_(Wf, Uf)])
        if not len(hits):
            self.fail(stage, "W''/U'' pair")
        w, u = int(Wf[hits[0][0]]), int(Uf[hits[0][1]])
        self.take(w, u)
        return w, u

    def pair_w(self, x: int, stage: str) -> tuple[int, int]:
        """Unused ``a, b ∈ W''`` with ``{x, a, b} ∈ H``."""
        Wf = self.free_w((x,))
        hits = np.argwhere(np.triu(self.adj[x][np.ix_(Wf, Wf)], k=1))
        if not len(hits):
            self.fail(stage, "W'' pair")
        a, b = int(Wf[hits[0][0]]), int(Wf[hits[0][1]])
        self.take(a, b)
        return a, b

    def bridge(self, x: int, y: int, stage: str) -> list[int]:
        """``[x', z, y']`` with ``{x, x', z}, {z, y', y} ∈ H``, ``z ∈ U''``."""
        Wf, Uf = self.free_w((x, y)), self.free_u((x, y))
        A = self.adj[x][np.ix_(Wf, Uf)]
        B = self.adj[y][np.ix_(Wf, Uf)]
        ca, cb = A.sum(axis=0), B.sum(axis=0)
        score = np.minimum(ca, cb)
        for j in np.argsort(-score, kind="stable"):
            if score[j] == 0:
                break
            xs = Wf[A[:, j]]
            ys = Wf[B[:, j]]
            for xp in xs[:2]:
                yp = next((int(y2) for y2 in ys if y2 != xp), None)
                if yp is not None:
                    out = [int(xp), int(Uf[j]), yp]
                    self.take(*out)
                    return out
        self.fail(stage, "bridge")
        raise AssertionError  # unreachable

    def link_via(self, x: int, y: int, stage: str) -> list[int]:
        """``x, [w', u, w], v, [x', u', x'']`` up to ``y``: two bridges through a fresh ``v ∈ W''``."""
        for v in self.free_w((x, y))[:16]:
            v = int(v)
            self.take(v)
            snapshot = self.used.copy()
            try:
                first = self.bridge(x, v, stage)
                second = self.bridge(v, y, stage)
                return first + [v] + second
            except PipelineFailure:
                self.used = snapshot
                self.used[v] = False
        self.fail(stage, "connector")
        raise AssertionError


def _two_edge_paths(H: Hypergraph3, Z: list[int]) -> list[tuple[int, ...]]:
    """All 2-edge loose paths ``a b c d e`` inside ``Z`` (each once per centre choice)."""
    Z = sorted(Z)
    if len(Z) < 5:
        return []
    sub = H.adj[np.ix_(Z, Z, Z)]
    i, j, k = np.nonzero(sub)
    keep = (i < j) & (j < k)
    edges = [(Z[a], Z[b], Z[c]) for a, b, c in zip(i[keep], j[keep], k[keep])]
    by_vertex: dict[int, list[tuple[int, int, int]]] = {}
    for e in edges:
        for v in e:
            by_vertex.setdefault(v, []).append(e)
    out = []
    for c, inc in sorted(by_vertex.items()):
        for x in range(len(inc)):
            for y in range(x + 1, len(inc)):
                e1, e2 = inc[x], inc[y]
                if len(set(e1) & set(e2)) == 1:
                    a, b = (v for v in e1 if v != c)
                    d, e = (v for v in e2 if v != c)
                    out.append((a, b, c, d, e))
    return out


def disjoint_two_paths(H: Hypergraph3, Z: frozenset[int] | set[int], k: int,
                       rounds: int = 64) -> list[tuple[int, ...]]:
    """At least ``k`` vertex-disjoint 2-edge paths in ``H[Z]``, or as many as found.

    Greedy selection, then local improvement: drop one chosen path and try to
    fit two disjoint paths into the freed vertices plus the unused ones.
    """
    chosen: list[tuple[int, ...]] = []
    free = set(Z)

    def greedy_into(pool: set[int], limit: int) -> list[tuple[int, ...]]:
        got: list[tuple[int, ...]] = []
        pool = set(pool)
        while len(got) < limit:
            cands = _two_edge_paths(H, list(pool))
            if not cands:
                break
            got.append(cands[0])
            pool -= set(cands[0])
        return got

    chosen = greedy_into(free, k)
    for P in chosen:
        free -= set(P)
    for _ in range(rounds):
        if len(chosen) >= k:
            break
        improved = False
        for i, P in enumerate(chosen):
            pool = free | set(P)
            two = greedy_into(pool, 2)
            if len(two) == 2:
                chosen[i:i + 1] = two
                free = pool - set(two[0]) - set(two[1])
                improved = True
                break
        if not improved:
            break
    return chosen[:k] if len(chosen) >= k else chosen


@dataclass(frozen=True)
class SpecialPath:
    path: LoosePath
    pieces: dict[str, tuple[int, int]]  # name -> (u_i, w_i)


def build_special_path(H: Hypergraph3, part: ExtremalPartition, seed: int = 0) -> SpecialPath:
    """Short loose path through all exceptional vertices with both ends in ``U''``.

    Pieces: ``P1`` strings ``p1`` disjoint 2-edge paths of the ``W`` side,
    ``P2`` alternates ``W''`` links with ``p2`` middles from ``U''``, ``P3``
    covers ``U'`` and ``P4`` covers the ``W'`` vertices not already in ``P1``.
    Pieces are joined through one ``U''`` and two ``W''`` vertices, and one
    ``W''`` plus one ``U''`` vertex is added at each end.
    """
    rng = np.random.default_rng(seed)
    B = _Builder(H, part, rng)
    u_side, w_side = part.u_side, part.w_side
    pieces: list[tuple[str, list[int]]] = []

    if part.p1 > 0:
        Qs = disjoint_two_paths(H, w_side, part.p1)
        if len(Qs) < part.p1:
            raise PipelineFailure("special-path", f"only {len(Qs)} of {part.p1} disjoint W-side paths",
                                  reason="construction-failed", piece="P1", starved="two-edge paths")
        for Q in Qs:
            B.take(*Q)
        seq = list(Qs[0])
        for Q in Qs[1:]:
            Q = list(Q)
            for nxt in (Q, Q[::-1]):
                snapshot = B.used.copy()
                try:
                    seq += B.link_via(seq[-1], nxt[0], "P1") + nxt
                    break
                except PipelineFailure:
                    B.used = snapshot
            else:
                B.fail("P1", "connector")
        a, u = B.step_wu(seq[-1], "P1")
        b, c = B.pair_w(u, "P1")
        seq += [a, u, b, c]
        a, u = B.step_wu(seq[0], "P1")
        b, c = B.pair_w(u, "P1")
        seq[:0] = [c, b, u, a]
        pieces.append(("P1", seq))

    if part.p2 > 0:
        Wf = B.free_w()
        if not len(Wf):
            B.fail("P2", "W''")
        seq = [int(Wf[0])]
        B.take(seq[0])
        for _ in range(part.p2):
            Wf, Uf = B.free_w(), B.free_u()
            hits = np.argwhere(H.adj[seq[-1]][np.ix_(Uf, Wf)])
            if not len(hits):
                B.fail("P2", "U''/W'' pair")
            u, v = int(Uf[hits[0][0]]), int(Wf[hits[0][1]])
            B.take(u, v)
            seq += [u, v]
        pieces.append(("P2", seq))

    if part.U1:
        B.take(*part.U1)
        seq: list[int] = []
        for x in sorted(part.U1):
            v1, v2 = B.pair_w(x, "P3")
            v3, v4 = B.pair_w(x, "P3")
            piece = [v1, v2, x, v3, v4]
            seq = piece if not seq else seq + B.bridge(seq[-1], piece[0], "P3") + piece
        pieces.append(("P3", seq))

    rest_w = sorted(part.W1 - (set(pieces[0][1]) if pieces and pieces[0][0] == "P1" else set()))
    if rest_w:
        B.take(*rest_w)
        seq = []
        for w in rest_w:
            v3, u1 = B.step_wu(w, "P4")
            v1, v2 = B.pair_w(u1, "P4")
            v4, u2 = B.step_wu(w, "P4")
            v5, v6 = B.pair_w(u2, "P4")
            piece = [v1, v2, u1, v3, w, v4, u2, v5, v6]
            seq = piece if not seq else seq + B.bridge(seq[-1], piece[0], "P4") + piece
        pieces.append(("P4", seq))

    if not pieces:
        Wf = B.free_w()
        if not len(Wf):
            B.fail("seed", "W''")
        core = [int(Wf[0])]
        B.take(core[0])
    else:
        core = pieces[0][1]
        for _, piece in pieces[1:]:
            core = core + B.bridge(core[-1], piece[0], "join") + piece
    w, u = B.step_wu(core[0], "ends")
    w2, u2 = B.step_wu(core[-1], "ends")
    seq = [u, w, *core, w2, u2]

    path = LoosePath(seq)
    bad = validate_loose_path(H, seq)
    assert bad is None, bad
    counts = {name: (sum(v in u_side for v in s), sum(v in w_side for v in s)) for name, s in pieces}
    interior_u = sum(v in u_side for v in seq[1:-1])
    on_w = sum(v in w_side for v in seq)
    assert 3 * (interior_u + 1) + 4 * part.p1 - 2 * part.p2 == on_w
    if len(seq) > 10 * part.sigma * H.n:
        raise PipelineFailure("special-path", "special path too long", reason="construction-failed",
                              piece="length", length=len(seq))
    return SpecialPath(path, counts)


# -- spanning path ----------------------------------------------------------


def _hamilton_path_L(L: np.ndarray, start: int, end: int, rng: np.random.Generator,
                     max_steps: int) -> list[int] | None:
    """Hamilton path of the bipartite graph ``L`` (rows ``U``, cols triples).

    Vertices are encoded ``("u", i)`` as ``i`` and ``("t", j)`` as ``-1 - j``.
    Rotation-extension from ``start``; ``end`` is held back until every other
    vertex is on the path.
    """
    mU, mT = L.shape

    def adjacent(x: int, y: int) -> bool:
        if (x >= 0) == (y >= 0):
            return False
        return bool(L[x, -1 - y] if x >= 0 else L[y, -1 - x])

    def nbrs(x: int) -> np.ndarray:
        return -1 - np.flatnonzero(L[x]) if x >= 0 else np.flatnonzero(L[:, -1 - x])

    path = [start]
    on = {start}
    total = mU + mT
    for _ in range(max_steps):
        tail = path[-1]
        if len(path) == total - 1:
            if tail < 0 and L[end, -1 - tail]:
                return path + [end]
            cands = []
        else:
            cands = [int(y) for y in nbrs(tail) if int(y) not in on and int(y) != end]
        if cands:
            y = cands[int(rng.integers(len(cands)))]
            path.append(y)
            on.add(y)
            continue
        # rotate: tail ~ path[j] gives path[:j+1] + reversed(path[j+1:])
        pos = [i for i, v in enumerate(path[:-2]) if adjacent(v, tail)]
        if not pos:
            return None
        j = pos[int(rng.integers(len(pos)))]
        path[j + 1:] = path[j + 1:][::-1]
    return None


def spanning_path(H: Hypergraph3, Ustar, Wstar, u: int, u_end: int, gamma: float,
                  seed: int = 0, retries: int = 64) -> LoosePath:
    """Spanning loose path of ``H[U* ∪ W*]`` from ``u`` to ``u_end``.

    Every edge has one vertex in ``U*`` and two in ``W*``: the path reads
    ``u, a1, b1, c1, x1, a2, b2, c2, x2, ...`` where ``a b c`` runs over the
    triples formed by two perfect matchings of good pairs.
    """
    Us = sorted(set(Ustar))
    Ws = sorted(set(Wstar))
    m = len(Us)
    if set(Us) & set(Ws):
        raise PreconditionViolation("disjointness", "U* and W* overlap")
    if u not in Us or u_end not in Us or u == u_end:
        raise PreconditionViolation("endpoints", "u and u' must be distinct vertices of U*")
    if m < 2 or len(Ws) != 3 * (m - 1):
        raise PreconditionViolation("sizes", f"need |W*| = 3(|U*| - 1), got {len(Ws)} and {m}")
    adj = H.adj
    Ua = np.array(Us)
    Wa = np.array(Ws)
    k = len(Wa)
    link = adj[np.ix_(Ua, Wa, Wa)]
    if (link.sum(axis=(1, 2)) // 2 < (1 - gamma) * math.comb(k, 2)).any():
        raise PreconditionViolation("goodness", "some vertex of U* is not gamma-good for W*")
    common = adj[np.ix_(Wa, Wa, Ua)].sum(axis=2)
    G = common >= (1 - gamma) * m
    np.fill_diagonal(G, False)
    if ((k - 1 - G.sum(axis=1)) > gamma * k).any():
        raise PreconditionViolation("goodness", "some vertex of W* lies in too few good pairs")

    rng = np.random.default_rng(seed)
    need = 0.75 * (m - 1)
    stage = "matching-failed"
    for _ in range(retries):
        perm = rng.permutation(k)
        W1, W2, W3 = perm[: m - 1], perm[m - 1: 2 * (m - 1)], perm[2 * (m - 1):]
        M1 = _perfect(G, W2, W1, rng)
        M2 = _perfect(G, W2, W3, rng)
        if M1 is None or M2 is None:
            stage = "matching-failed"
            continue
        trip = [(M1[b], b, M2[b]) for b in W2.tolist()]
        a = np.array([t[0] for t in trip])
        b = np.array([t[1] for t in trip])
        c = np.array([t[2] for t in trip])
        Li = np.arange(m)[:, None]
        L = link[Li, a[None, :], b[None, :]] & link[Li, b[None, :], c[None, :]]
        if (L.sum(axis=1) < need).any():
            stage = "repair-exhausted"
            continue
        hp = _hamilton_path_L(L, Us.index(u), Us.index(u_end), rng, 50 * m * m + 100)
        if hp is None:
            stage = "rotation-failed"
            continue
        seq: list[int] = []
        for x in hp:
            if x >= 0:
                seq.append(Us[x])
            else:
                ai, bi, ci = trip[-1 - x]
                seq += [Ws[ai], Ws[bi], Ws[ci]]
        path = LoosePath(seq)
        bad = validate_loose_path(H, seq)
        assert bad is None, bad
        return path
    raise PipelineFailure("spanning-path", stage, reason=stage, m=m)


def _perfect(G: np.ndarray, left: np.ndarray, right: np.ndarray,
             rng: np.random.Generator) -> dict[int, int] | None:
    sub = G[np.ix_(left, right)]
    graph = {int(x): [int(right[j]) for j in rng.permutation(np.flatnonzero(sub[i]))]
             for i, x in enumerate(left)}
    order = [int(x) for x in rng.permutation(left)]
    M = max_bipartite_matching(graph, order)
    return M if len(M) == len(left) else None


# -- solver -----------------------------------------------------------------


def _attempt(H: Hypergraph3, part: ExtremalPartition, cfg: SolveConfig, seed: int) -> tuple[int, ...]:
    sp = build_special_path(H, part, seed)
    P = list(sp.path.seq)
    u, u_end = P[0], P[-1]
    on_p = set(P)
    Ustar = (part.u_side - on_p) | {u, u_end}
    Wstar = part.w_side - on_p
    S = spanning_path(H, Ustar, Wstar, u_end, u, cfg.spanning_gamma, seed, cfg.retries)
    return tuple(P + list(S.seq[1:-1]))


def extremal_solve(H: Hypergraph3, config: SolveConfig | None = None, seed: int = 0,
                   witness: ExtremalWitness | None = None) -> SolveReport:
    """Classify, build the special path, cover the rest, and close the cycle."""
    cfg = config or SolveConfig()
    t0 = time.perf_counter()
    counters = {"outer": 0, "witness": 0}
    cycle = None
    detail = None
    if H.n % 2:
        detail = {"stage": "parity", "message": f"n = {H.n} is odd"}
    else:
        try:
            if witness is None:
                counters["witness"] += 1
                witness = extremality_witness(H, cfg.beta, cfg.witness_budget, seed)
            part = classify_extremal(H, cfg.beta, witness) if witness is not None else None
            if part is None:
                detail = {"stage": "classification", "reason": "not-extremal",
                          "message": "no sparse witness; extremal branch unavailable"}
            else:
                for t in range(max(1, cfg.retries // 8)):
                    counters["outer"] += 1
                    try:
                        cycle = _attempt(H, part, cfg, seed + ATTEMPT_STRIDE * t)
                        break
                    except PipelineFailure as exc:
                        detail = {"stage": exc.stage, "message": str(exc), **exc.diagnostics}
                    except PreconditionViolation as exc:
                        detail = {"stage": "spanning-path", "message": str(exc), "clause": exc.clause}
                        break
        except PipelineFailure as exc:
            detail = {"stage": exc.stage, "message": str(exc), **exc.diagnostics}
    elapsed = (time.perf_counter() - t0) * 1000
    if cycle is not None:
        return SolveReport("cycle", "extremal", cycle, cfg.as_params(seed), counters, elapsed,
                           seed, host=H)
    return SolveReport("failure", "extremal", None, cfg.as_params(seed), counters, elapsed,
                       seed, detail=detail)
