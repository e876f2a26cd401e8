"""Maximum bipartite matching by augmenting paths."""

from __future__ import annotations

from typing import Hashable, Iterable, Mapping, Sequence, TypeVar

L = TypeVar("L", bound=Hashable)
R = TypeVar("R", bound=Hashable)


def max_bipartite_matching(adj: Mapping[L, Sequence[R]],
                           order: Iterable[L] | None = None) -> dict[L, R]:
    """Return a maximum matching as a left -> right dict.

    Left vertices are tried in ``order`` (default: mapping order) and
    neighbours in list order, so shuffling either randomises which maximum
    matching comes back.
    """
    owner: dict[R, L] = {}

    def augment(u: L, seen: set[R]) -> bool:
        for r in adj[u]:
            if r in seen:
                continue
            seen.add(r)
            if r not in owner or augment(owner[r], seen):
                owner[r] = u
                return True
        return False

    for u in (adj if order is None else order):
        augment(u, set())
    return {u: r for r, u in owner.items()}
