from __future__ import annotations

import itertools

import pytest

from loosecycle.core import Hypergraph3, extremality_witness, induced
from loosecycle.errors import PipelineFailure, PreconditionViolation
from loosecycle.generators import complete, extremal_star, extremal_star_balanced
from loosecycle.constructive import (SolveConfig, build_special_path, classify_extremal,
                                     disjoint_two_paths, extremal_solve, spanning_path)
from loosecycle.structures import validate_loose_cycle, validate_loose_path

from fixtures import covered_star, perturbed_balanced


def split_graph(m: int, k: int, drop=()) -> Hypergraph3:
    """All triples with one vertex in ``0..m-1`` and two in ``m..m+k-1``."""
    U, W = range(m), range(m, m + k)
    edges = [(u, a, b) for u in U for a, b in itertools.combinations(W, 2)
             if (u, a, b) not in drop]
    return Hypergraph3(m + k, edges)


def sides_ok(part, n):
    assert part.u_side | part.w_side == frozenset(range(n))
    assert not part.u_side & part.w_side
    lhs, rhs = part.balance()
    assert lhs == rhs and part.p1 >= 0 and part.p2 >= 0


class TestClassify:
    def test_balanced(self):
        H = extremal_star_balanced(80)
        part = classify_extremal(H, 0.001)
        sides_ok(part, 80)
        assert not part.U1 and not part.W1
        assert (part.p1, part.p2) == (0, 0)
        assert len(part.u_side) == 20 and len(part.w_side) == 60

    def test_star_ten(self):
        part = classify_extremal(extremal_star(10), 0.01)
        sides_ok(part, 10)
        assert len(part.u_side) == 2
        assert (part.p1, part.p2) == (1, 1)
        # 3*2 + 4*1 - 2*1 = 8 = |W|
        assert part.balance() == (8, 8)

    def test_complete_is_not_extremal(self):
        assert classify_extremal(complete(20), 1e-6) is None

    def test_with_exceptional_vertices(self):
        part = classify_extremal(perturbed_balanced(40, 1, 1), 0.001)
        sides_ok(part, 40)
        assert part.U1 == {0} and part.W1 == {39}


class TestSpecialPath:
    def test_degenerate(self):
        H = extremal_star_balanced(80)
        part = classify_extremal(H, 0.001)
        sp = build_special_path(H, part)
        seq = sp.path.seq
        assert len(seq) == 5 and validate_loose_path(H, seq) is None
        assert seq[0] in part.U2 and seq[-1] in part.U2
        assert all(v in part.W2 for v in seq[1:4])

    def test_p1_piece(self):
        H = covered_star(42)
        part = classify_extremal(H, 0.005)
        assert (part.p1, part.p2) == (1, 1)
        sp = build_special_path(H, part)
        assert sp.pieces["P1"] == (2 * part.p1, 3 * 2 * part.p1 + 1 + 4 * part.p1)
        assert sp.pieces["P2"] == (part.p2, part.p2 + 1)
        assert validate_loose_path(H, sp.path.seq) is None

    def test_p3_piece(self):
        H = perturbed_balanced(40, 1, 0)
        part = classify_extremal(H, 0.001)
        sp = build_special_path(H, part)
        # one exceptional U-vertex: u3 = 2*1 - 1, w3 = 3*u3 + 1
        assert sp.pieces["P3"] == (1, 4)

    def test_p4_piece(self):
        H = perturbed_balanced(40, 0, 1)
        part = classify_extremal(H, 0.001)
        sp = build_special_path(H, part)
        assert sp.pieces["P4"] == (2, 7)

    def test_two_of_each(self):
        H = perturbed_balanced(80, 2, 2)
        part = classify_extremal(H, 0.001)
        sp = build_special_path(H, part)
        assert sp.pieces["P3"] == (3, 10) and sp.pieces["P4"] == (5, 16)
        assert sp.path.vertices() >= part.U1 | part.W1

    def test_star_ten_starves(self):
        H = extremal_star(10)
        part = classify_extremal(H, 0.01)
        with pytest.raises(PipelineFailure) as exc:
            build_special_path(H, part)
        assert exc.value.diagnostics["piece"] == "P1"

    def test_disjoint_two_paths(self):
        H = covered_star(42)
        W = frozenset(range(10, 42))
        got = disjoint_two_paths(H, W, 3)
        assert len(got) == 3
        assert len(set().union(*map(set, got))) == 15
        for p in got:
            assert validate_loose_path(H, p) is None and set(p) <= W


class TestSpanningPath:
    def test_five_twelve(self):
        H = split_graph(5, 12)
        P = spanning_path(H, range(5), range(5, 17), 0, 4, 0.1)
        assert P.vertices() == frozenset(range(17))
        assert P.endpoints == (0, 4)
        assert validate_loose_path(H, P.seq) is None
        for i in range(0, 16, 2):
            assert sum(v < 5 for v in P.seq[i:i + 3]) == 1

    def test_smallest(self):
        H = split_graph(2, 3)
        P = spanning_path(H, [0, 1], [2, 3, 4], 1, 0, 0.0)
        assert len(P.seq) == 5 and P.endpoints == (1, 0)

    def test_size_precondition(self):
        with pytest.raises(PreconditionViolation) as exc:
            spanning_path(split_graph(2, 4), [0, 1], [2, 3, 4, 5], 0, 1, 0.0)
        assert exc.value.clause == "sizes"

    def test_missing_pair_with_zero_slack(self):
        H = split_graph(2, 3, drop={(0, 2, 3)})
        with pytest.raises(PreconditionViolation) as exc:
            spanning_path(H, [0, 1], [2, 3, 4], 0, 1, 0.0)
        assert exc.value.clause == "goodness"

    def test_endpoint_precondition(self):
        with pytest.raises(PreconditionViolation):
            spanning_path(split_graph(2, 3), [0, 1], [2, 3, 4], 0, 0, 0.0)


class TestExtremalSolve:
    @pytest.mark.parametrize("n", [40, 80])
    def test_balanced(self, n):
        H = extremal_star_balanced(n)
        rep = extremal_solve(H, seed=1)
        assert rep.outcome == "cycle" and rep.branch == "extremal"
        assert validate_loose_cycle(H, rep.cycle) is None and len(rep.cycle) == n

    def test_with_padding(self):
        H = covered_star(42)
        rep = extremal_solve(H, SolveConfig(beta=0.005))
        assert rep.outcome == "cycle"

    def test_star_ten_fails(self):
        rep = extremal_solve(extremal_star(10), SolveConfig(beta=0.01))
        assert rep.outcome == "failure" and rep.cycle is None

    def test_not_extremal(self):
        rep = extremal_solve(complete(20), SolveConfig(beta=1e-6))
        assert rep.outcome == "failure"
        assert rep.detail["reason"] == "not-extremal"

    def test_odd(self):
        rep = extremal_solve(induced(extremal_star_balanced(40), range(39))[0])
        assert rep.outcome == "failure" and rep.detail["stage"] == "parity"


def test_witness_of_balanced_graph():
    w = extremality_witness(extremal_star_balanced(40), 0.001, seed=3)
    assert w is not None and w.W == frozenset(range(10, 40))
