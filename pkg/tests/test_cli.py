from __future__ import annotations

import csv
import io
import json
import subprocess
import sys

import numpy as np
import pytest

from loosecycle import cli
from loosecycle.core import read_h3, save_h3
from loosecycle.generators import (complete, extremal_star, extremal_star_balanced,
                                   random_density, tripartite_complete)


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


class TestGen:
    def test_extremal_star(self, tmp_path, capsys):
        f = tmp_path / "s.h3"
        code, out, _ = run(capsys, "gen", "extremal-star", 10, "--out", f)
        assert code == 0
        assert out.strip() == "n=10 edges=64 min_codegree=2"
        assert read_h3(f) == extremal_star(10)

    def test_complete(self, tmp_path, capsys):
        code, out, _ = run(capsys, "gen", "complete", 6, "--out", tmp_path / "k.h3")
        assert code == 0 and "edges=20" in out

    def test_bad_residue(self, tmp_path, capsys):
        code, _, err = run(capsys, "gen", "extremal-star", 8, "--out", tmp_path / "x.h3")
        assert code != 0 and "2 mod 4" in err

    def test_missing_p(self, tmp_path, capsys):
        code, _, err = run(capsys, "gen", "random-density", 8, "--out", tmp_path / "x.h3")
        assert code == 2 and "--p" in err

    def test_bad_p(self, tmp_path, capsys):
        code, _, err = run(capsys, "gen", "random-density", 8, "--p", 1.5, "--out", tmp_path / "x.h3")
        assert code == 2 and "--p" in err

    def test_bad_parts(self, tmp_path, capsys):
        code, _, err = run(capsys, "gen", "tripartite", 6, "--parts", "3,3,3", "--out", tmp_path / "x.h3")
        assert code == 2 and "--parts" in err

    def test_round_trip(self, tmp_path, capsys):
        rng = np.random.default_rng(0)
        cases = []
        for _ in range(20):
            n = int(rng.integers(3, 13)) * 2
            p = float(rng.random())
            s = int(rng.integers(1000))
            cases.append((["random-density", n, "--p", p, "--seed", s], random_density(n, p, s)))
        cases += [(["extremal-star", 14], extremal_star(14)),
                  (["extremal-star-balanced", 12], extremal_star_balanced(12)),
                  (["complete", 9], complete(9)),
                  (["tripartite", 10, "--parts", "2,3,4"],
                   tripartite_complete(range(2), range(2, 5), range(5, 9), n=10))]
        for i, (args, expect) in enumerate(cases):
            f = tmp_path / f"g{i}.h3"
            code, _, _ = run(capsys, "gen", *args, "--out", f)
            assert code == 0
            assert read_h3(f) == expect


@pytest.fixture()
def k6(tmp_path):
    f = tmp_path / "k6.h3"
    save_h3(complete(6), f)
    return f


class TestCheck:
    def test_hamilton_ok(self, k6, capsys):
        code, out, _ = run(capsys, "check", k6, "hamilton", "0", "1", "2", "3", "4", "5")
        assert code == 0 and out.strip() == "ok"

    def test_short_cycle(self, k6, capsys):
        code, out, _ = run(capsys, "check", k6, "cycle", "0,1,2,3")
        assert code == 1 and "min-length" in out

    def test_non_spanning(self, tmp_path, capsys):
        f = tmp_path / "k8.h3"
        save_h3(complete(8), f)
        code, out, _ = run(capsys, "check", f, "hamilton", *range(6))
        assert code == 1

    def test_path(self, k6, capsys):
        code, _, _ = run(capsys, "check", k6, "path", 0, 1, 2, 3, 4)
        assert code == 0

    def test_malformed(self, tmp_path, capsys):
        f = tmp_path / "bad.h3"
        f.write_text("not a header\n")
        code, _, _ = run(capsys, "check", f, "path", 0, 1, 2)
        assert code == 2

    def test_missing_file(self, tmp_path, capsys):
        code, _, _ = run(capsys, "check", tmp_path / "none.h3", "path", 0, 1, 2)
        assert code == 2


class TestSolve:
    def test_oracle_none(self, tmp_path, capsys):
        f = tmp_path / "s6.h3"
        save_h3(extremal_star(6), f)
        code, out, _ = run(capsys, "solve", f, "--method", "oracle")
        assert code == 3
        assert json.loads(out)["outcome"] == "proven-none"

    def test_auto_complete(self, tmp_path, capsys):
        f = tmp_path / "k12.h3"
        save_h3(complete(12), f)
        code, out, _ = run(capsys, "solve", f)
        doc = json.loads(out)
        assert code == 0 and doc["branch"] == "oracle"
        assert set(doc) == {"outcome", "branch", "cycle", "params", "retries", "elapsed_ms", "seed"}
        assert len(doc["cycle"]) == 12

    def test_odd(self, tmp_path, capsys):
        f = tmp_path / "k7.h3"
        save_h3(complete(7), f)
        code, out, err = run(capsys, "solve", f)
        assert code == 4 and "parity" in err
        assert json.loads(out)["outcome"] == "failure"

    def test_out_file(self, tmp_path, capsys):
        f = tmp_path / "k8.h3"
        save_h3(complete(8), f)
        rep = tmp_path / "r.json"
        code, out, _ = run(capsys, "solve", f, "--seed", 4, "--out", rep)
        assert code == 0 and out == ""
        assert json.loads(rep.read_text())["seed"] == 4

    def test_flags_reach_params(self, tmp_path, capsys):
        f = tmp_path / "k8.h3"
        save_h3(complete(8), f)
        code, out, _ = run(capsys, "solve", f, "--delta", 0.2, "--beta", 0.01, "--retries", 5)
        p = json.loads(out)["params"]
        assert (p["delta"], p["beta"], p["retries"]) == (0.2, 0.01, 5)


class TestScan:
    def test_six(self, capsys):
        code, out, _ = run(capsys, "scan", "--n-min", 6, "--n-max", 6, "--trials", 0)
        rows = list(csv.reader(io.StringIO(out)))
        assert code == 0
        assert rows[0] == ["n", "min_codegree", "hamilton", "seed"]
        assert ["6", "1", "no", "-"] in rows
        assert ["6", "4", "yes", "-"] in rows

    def test_random_rows(self):
        rows = cli.scan_rows(6, 8, 2, 0, 14)
        assert len([r for r in rows if r[3] != "-"]) == 4
        assert cli.scan_rows(6, 8, 2, 0, 14) == rows

    def test_cap(self, capsys):
        code, _, err = run(capsys, "scan", "--n-min", 6, "--n-max", 20)
        assert code == 2 and "--oracle-cap" in err


class TestAbsorbers:
    def test_count(self, tmp_path, capsys):
        f = tmp_path / "b12.h3"
        save_h3(extremal_star_balanced(12), f)
        code, out, _ = run(capsys, "absorbers", f, 5, 9, "--show", 2)
        lines = out.split("\n")
        assert code == 0 and lines[0] == "126" and len(lines[1].split()) == 5


def test_module_entry_point(tmp_path):
    res = subprocess.run([sys.executable, "-m", "loosecycle", "gen", "complete", "6",
                          "--out", str(tmp_path / "k.h3")], capture_output=True, text=True)
    assert res.returncode == 0 and "edges=20" in res.stdout
