"""Hypergraph constructions used as fixtures and benchmarks.

Partitioned constructions place the small side ``U`` on the lowest labels.
"""

from __future__ import annotations

import itertools
import math
from typing import Iterable

import numpy as np

from .core import Hypergraph3
from .errors import DegenerateInput, InvalidN, OverlapError


def _all_triples(n: int) -> np.ndarray:
    if n < 3:
        return np.zeros((0, 3), dtype=np.int64)
    flat = np.fromiter(itertools.chain.from_iterable(itertools.combinations(range(n), 3)),
                       dtype=np.int64, count=3 * math.comb(n, 3))
    return flat.reshape(-1, 3)


def _meeting_prefix(n: int, u: int) -> Hypergraph3:
    # sorted triples meet {0..u-1} iff their smallest vertex is below u
    T = _all_triples(n)
    return Hypergraph3(n, T[T[:, 0] < u])


def extremal_star(n: int) -> Hypergraph3:
    """All triples meeting ``U = {0..(n-2)/4 - 1}``; needs ``n ≡ 2 (mod 4)``."""
    if n < 6 or n % 4 != 2:
        raise InvalidN(f"extremal-star needs n ≡ 2 mod 4 and n >= 6, got {n}")
    return _meeting_prefix(n, (n - 2) // 4)


def extremal_star_balanced(n: int) -> Hypergraph3:
    """All triples meeting ``U = {0..n/4 - 1}``; needs ``4 | n`` and ``n >= 8``."""
    if n < 8 or n % 4 != 0:
        raise InvalidN(f"extremal-star-balanced needs n divisible by 4 and n >= 8, got {n}")
    return _meeting_prefix(n, n // 4)


def complete(n: int) -> Hypergraph3:
    if n < 3:
        raise DegenerateInput(f"complete 3-graph needs n >= 3, got {n}")
    return Hypergraph3(n, _all_triples(n))


def random_density(n: int, p: float, seed: int) -> Hypergraph3:
    """Each triple independently with probability ``p`` (PCG64 stream per seed)."""
    if not 0 <= p <= 1:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    T = _all_triples(n)
    rng = np.random.default_rng(seed)
    keep = rng.random(len(T)) < p
    return Hypergraph3(n, T[keep])


def tripartite_complete(V1: Iterable[int], V2: Iterable[int], V3: Iterable[int],
                        n: int | None = None) -> Hypergraph3:
    """All triples with one vertex in each part.

    The vertex count defaults to one more than the largest label used.
    """
    parts = [sorted(set(V)) for V in (V1, V2, V3)]
    if not all(parts):
        raise OverlapError("parts must be nonempty")
    s1, s2, s3 = (set(p) for p in parts)
    if s1 & s2 or s1 & s3 or s2 & s3:
        raise OverlapError("parts must be pairwise disjoint")
    top = max(max(p) for p in parts) + 1
    if n is None:
        n = top
    elif n < top:
        raise OverlapError(f"n={n} too small for labels up to {top - 1}")
    edges = list(itertools.product(*parts))
    return Hypergraph3(n, edges)
