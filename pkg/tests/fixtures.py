"""Hand-built extremal-like graphs shared by several test modules."""

from __future__ import annotations

import itertools

import numpy as np

from loosecycle.core import Hypergraph3
from loosecycle.generators import extremal_star, extremal_star_balanced


def covered_star(n: int) -> Hypergraph3:
    """``extremal_star(n)`` plus W-triples covering every W-pair once or more.

    Lifts the minimum co-degree from ``(n-2)/4`` to at least ``n/4`` while
    leaving ``W`` sparse, so the classifier needs one unit of ``p1`` padding.
    """
    H = extremal_star(n)
    u = (n - 2) // 4
    W = list(range(u, n))
    covered = np.zeros((n, n), dtype=bool)
    extra = []
    for a, b in itertools.combinations(W, 2):
        if covered[a, b]:
            continue
        c = next(c for c in W if c not in (a, b) and not covered[a, c] and not covered[b, c]) \
            if any(c not in (a, b) and not covered[a, c] and not covered[b, c] for c in W) \
            else next(c for c in W if c not in (a, b))
        extra.append(sorted((a, b, c)))
        for x, y in itertools.combinations((a, b, c), 2):
            covered[x, y] = covered[y, x] = True
    return Hypergraph3(n, [*H.edge_array.tolist(), *extra])


def perturbed_balanced(n: int, weak_u: int = 1, weak_w: int = 1, seed: int = 0) -> Hypergraph3:
    """``extremal_star_balanced(n)`` with a few vertices made exceptional.

    The first ``weak_u`` vertices of ``U`` lose 45% of their W-pair link; the
    last ``weak_w`` vertices of ``W`` lose half of ``U`` from two thirds of
    their pairs.
    """
    rng = np.random.default_rng(seed)
    adj = extremal_star_balanced(n).adj.copy()
    u = n // 4
    W = np.arange(u, n)
    for x in range(weak_u):
        pairs = list(itertools.combinations(W.tolist(), 2))
        for i in rng.choice(len(pairs), size=int(0.45 * len(pairs)), replace=False):
            a, b = pairs[i]
            for p in itertools.permutations((x, a, b)):
                adj[p] = False
    for w in W[len(W) - weak_w:].tolist():
        others = [v for v in W.tolist() if v != w]
        for v in rng.choice(others, size=2 * len(others) // 3, replace=False).tolist():
            for x in rng.choice(u, size=u // 2, replace=False).tolist():
                for p in itertools.permutations((x, w, v)):
                    adj[p] = False
    return Hypergraph3.from_adjacency(adj)


def planted_tripartite(C: int = 24, extra: int = 3, path_len: int = 31, reservoir: int = 6):
    """A loose path whose first block holds ``V3`` of a complete ``V1 × V2 × V3``.

    ``|V1| = |V2| = 3C`` and ``|V3| = C``. Reservoir vertices are joined to
    every pair so any junction can be bridged. Returns ``(H, Q, R, W)`` with
    ``Q`` the path sequence, ``R`` the reservoir list and ``W = V1 ∪ V2``.
    """
    V1 = list(range(3 * C))
    V2 = list(range(3 * C, 6 * C))
    base = 6 * C
    V3 = list(range(base, base + C))
    # path: head, block (V3 plus extra filler), tail
    others = list(range(base + C, base + C + path_len - C))
    Q = [others[0], *V3, *others[1:]]
    n = base + C + path_len - C
    R = list(range(n, n + reservoir))
    n += reservoir
    edges = [(a, b, c) for a in V1 for b in V2 for c in V3]
    edges += [tuple(Q[i:i + 3]) for i in range(0, len(Q) - 2, 2)]
    for r in R:
        edges += [(r, a, b) for a, b in itertools.combinations([v for v in range(n) if v != r], 2)]
    return Hypergraph3(n, edges), Q, R, V1 + V2
