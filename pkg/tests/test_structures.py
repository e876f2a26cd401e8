from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from loosecycle.core import Hypergraph3
from loosecycle.errors import PreconditionViolation
from loosecycle.generators import complete, extremal_star
from loosecycle.structures import (LooseCycle, LoosePath, connect, cycle_edges, format_sequence,
                                   is_hamilton, parse_sequence, path_edges, validate_loose_cycle,
                                   validate_loose_path)

import naive


class TestEdges:
    def test_path_edges(self):
        assert path_edges([0, 1, 2, 3, 4]) == [(0, 1, 2), (2, 3, 4)]

    def test_cycle_edges_close_through_first(self):
        assert cycle_edges([0, 1, 2, 3, 4, 5]) == [(0, 1, 2), (2, 3, 4), (0, 4, 5)]


class TestLoosePath:
    def test_shape(self):
        P = LoosePath((0, 1, 2, 3, 4))
        assert P.m == 2 and P.endpoints == (0, 4) and len(P) == 5
        assert P.reversed().seq == (4, 3, 2, 1, 0)

    @pytest.mark.parametrize("seq", [(0, 1), (0, 1, 2, 3), (0, 1, 0)])
    def test_rejects_bad_shapes(self, seq):
        with pytest.raises(ValueError):
            LoosePath(seq)

    def test_cycle_links(self):
        C = LooseCycle((5, 4, 3, 2, 1, 0))
        assert C.m == 3 and C.link_vertices() == (5, 3, 1)


class TestValidatePath:
    def test_two_edge_path(self):
        H = Hypergraph3(5, [(0, 1, 2), (2, 3, 4)])
        assert validate_loose_path(H, [0, 1, 2, 3, 4]) is None

    def test_even_length(self):
        assert validate_loose_path(complete(6), [0, 1, 2, 3]).kind == "parity"

    def test_missing_edge(self):
        bad = validate_loose_path(Hypergraph3(5, [(0, 1, 2)]), [0, 1, 2, 3, 4])
        assert bad.kind == "missing-edge" and bad.edge == (2, 3, 4) and bad.index == 1

    def test_invalid_vertex_and_duplicate(self):
        assert validate_loose_path(complete(5), [0, 1, 7]).kind == "invalid-vertex"
        assert validate_loose_path(complete(5), [0, 1, 0]).kind == "duplicate"


class TestValidateCycle:
    def test_complete(self):
        assert validate_loose_cycle(complete(6), [0, 1, 2, 3, 4, 5]) is None

    def test_too_short(self):
        bad = validate_loose_cycle(complete(6), [0, 1, 2, 3])
        assert bad.kind == "min-length" and "m >= 3" in bad.detail

    def test_extremal_star_has_no_cycle(self):
        H = extremal_star(6)
        assert all(validate_loose_cycle(H, p) is not None for p in itertools.permutations(range(6)))

    @settings(max_examples=60, deadline=None)
    @given(st.permutations(range(8)), st.integers(0, 10**6))
    def test_agrees_with_naive(self, perm, seed):
        from loosecycle.generators import random_density
        H = random_density(8, 0.7, seed)
        ok = validate_loose_cycle(H, perm) is None
        assert ok == naive.is_loose_cycle(naive.edge_set(H), perm)


class TestHamilton:
    def test_examples(self):
        C6 = LooseCycle((0, 1, 2, 3, 4, 5))
        assert is_hamilton(complete(6), C6)
        assert not is_hamilton(complete(8), C6)
        assert is_hamilton(complete(10), LooseCycle(tuple(range(10))))


class TestConnect:
    def test_joins_paths(self):
        H = Hypergraph3(7, [(0, 1, 2), (2, 3, 4), (4, 5, 6)])
        P = connect(LoosePath((0, 1, 2)), LoosePath((4, 5, 6)), 3, H)
        assert P.seq == (0, 1, 2, 3, 4, 5, 6)

    def test_bridge_on_path(self):
        with pytest.raises(PreconditionViolation) as exc:
            connect(LoosePath((0, 1, 2)), LoosePath((4, 5, 6)), 1, complete(7))
        assert exc.value.clause == "disjointness"

    def test_missing_bridge_edge(self):
        H = Hypergraph3(7, [(0, 1, 2), (4, 5, 6)])
        with pytest.raises(PreconditionViolation) as exc:
            connect(LoosePath((0, 1, 2)), LoosePath((4, 5, 6)), 3, H)
        assert exc.value.clause == "edge"


def test_sequence_text_round_trip():
    assert parse_sequence(format_sequence([3, 1, 4])) == (3, 1, 4)
    assert parse_sequence("0,1, 2") == (0, 1, 2)
