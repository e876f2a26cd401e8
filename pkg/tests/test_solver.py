from __future__ import annotations

import json

import pytest

from loosecycle.core import induced
from loosecycle.generators import complete, extremal_star, extremal_star_balanced, random_density
from loosecycle.constructive import SolveConfig, SolveReport, nonextremal_solve, solve
from loosecycle.constructive.config import config_from_dict
from loosecycle.structures import validate_loose_cycle

DOC_KEYS = {"outcome", "branch", "cycle", "params", "retries", "elapsed_ms", "seed"}


class TestSolve:
    def test_star_six_via_oracle(self):
        rep = solve(extremal_star(6))
        assert (rep.outcome, rep.branch) == ("proven-none", "oracle")

    def test_complete_twelve(self):
        rep = solve(complete(12))
        assert (rep.outcome, rep.branch) == ("cycle", "oracle")

    def test_complete_200(self):
        rep = solve(complete(200))
        assert (rep.outcome, rep.branch) == ("cycle", "non-extremal")
        assert validate_loose_cycle(complete(200), rep.cycle) is None

    def test_balanced_200(self):
        rep = solve(extremal_star_balanced(200))
        assert (rep.outcome, rep.branch) == ("cycle", "extremal")

    def test_odd_is_parity_failure(self):
        H = induced(complete(13), range(13))[0]
        rep = solve(H)
        assert rep.outcome == "failure" and rep.detail["stage"] == "parity"

    def test_unknown_method(self):
        with pytest.raises(ValueError):
            solve(complete(6), method="magic")

    def test_forced_oracle_over_cap(self):
        rep = solve(complete(16), method="oracle")
        assert rep.outcome == "failure" and rep.detail["reason"] == "cap-exceeded"

    def test_seed_recorded(self):
        rep = solve(complete(8), seed=17)
        assert rep.seed == 17 and rep.params["seed"] == 17


class TestNonextremal:
    def test_random_dense(self):
        H = random_density(200, 0.9, 0)
        rep = nonextremal_solve(H, seed=0)
        assert rep.outcome == "cycle" and len(rep.cycle) == 200
        assert validate_loose_cycle(H, rep.cycle) is None
        assert rep.retries["outer"] >= 1

    def test_star_ten_fails(self):
        rep = nonextremal_solve(extremal_star(10))
        assert rep.outcome == "failure" and rep.cycle is None and rep.detail

    def test_odd(self):
        rep = nonextremal_solve(induced(complete(21), range(21))[0])
        assert rep.outcome == "failure" and rep.detail["stage"] == "parity"


class TestReport:
    def test_document_fields(self):
        rep = solve(complete(8))
        doc = json.loads(rep.to_json())
        assert set(doc) == DOC_KEYS
        assert "elapsed_ms" not in json.loads(rep.to_json(include_elapsed=False))

    def test_refuses_invalid_cycle(self):
        with pytest.raises(ValueError):
            SolveReport("cycle", "oracle", (0, 1, 2, 3), {}, {}, 0.0, 0, host=complete(6))

    def test_refuses_bad_outcome(self):
        with pytest.raises(ValueError):
            SolveReport("maybe", "oracle", None, {}, {}, 0.0, 0)

    def test_cycle_needs_host(self):
        with pytest.raises(ValueError):
            SolveReport("cycle", "oracle", tuple(range(6)), {}, {}, 0.0, 0)

    def test_repeatable(self):
        H = random_density(60, 0.9, 2)
        a = nonextremal_solve(H, seed=5).to_json(include_elapsed=False)
        b = nonextremal_solve(H, seed=5).to_json(include_elapsed=False)
        assert a == b


def test_config_defaults_and_overrides():
    cfg = SolveConfig()
    assert cfg.eps == pytest.approx(0.075)
    assert cfg.reservoir_size(200) == 25 and cfg.reservoir_threshold(200) == 12
    assert config_from_dict({"delta": 0.2, "bogus": 1}).delta == 0.2
