"""Command-line entry point: generate, check, solve, scan, count absorbers."""

from __future__ import annotations

import argparse
import csv
import io
import sys
from pathlib import Path

import numpy as np

from . import generators
from .constructive import METHODS, SolveConfig, solve
from .core import Hypergraph3, min_codegree, read_h3, save_h3
from .errors import H3ParseError, HypergraphError
from .oracle import OracleStatus, enumerate_absorbers, find_hamilton_cycle
from .structures import Violation, parse_sequence, validate_loose_cycle, validate_loose_path

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_NONE = 3
EXIT_FAILURE = 4

OUTCOME_EXIT = {"cycle": EXIT_OK, "proven-none": EXIT_NONE, "failure": EXIT_FAILURE}

KINDS = ("extremal-star", "extremal-star-balanced", "complete", "random-density", "tripartite")
SCAN_COLUMNS = ("n", "min_codegree", "hamilton", "seed")


class CliError(Exception):
    """Bad flag value; the message names the flag."""


def _build(kind: str, n: int, p: float | None, seed: int, parts: str | None) -> Hypergraph3:
    try:
        if kind == "extremal-star":
            return generators.extremal_star(n)
        if kind == "extremal-star-balanced":
            return generators.extremal_star_balanced(n)
        if kind == "complete":
            return generators.complete(n)
        if kind == "random-density":
            if p is None:
                raise CliError("--p is required for random-density")
            return generators.random_density(n, p, seed)
        if parts is None:
            raise CliError("--parts a,b,c is required for tripartite")
        sizes = [int(x) for x in parts.split(",")]
        if len(sizes) != 3 or min(sizes) < 1:
            raise CliError("--parts needs three positive sizes")
        if sum(sizes) > n:
            raise CliError(f"--parts sums to {sum(sizes)} > n = {n}")
        a, b, _ = sizes
        return generators.tripartite_complete(range(a), range(a, a + b), range(a + b, sum(sizes)), n=n)
    except ValueError as exc:
        if isinstance(exc, CliError):
            raise
        flag = "--p" if kind == "random-density" and "p must" in str(exc) else "n"
        raise CliError(f"{flag}: {exc}") from None


def cmd_gen(args) -> int:
    H = _build(args.kind, args.n, args.p, args.seed, args.parts)
    save_h3(H, args.out)
    print(f"n={H.n} edges={H.num_edges} min_codegree={min_codegree(H).min}")
    return EXIT_OK


def _load(args) -> Hypergraph3:
    return read_h3(args.file, strict=args.strict_parse)


def cmd_check(args) -> int:
    H = _load(args)
    try:
        seq = parse_sequence(" ".join(args.witness))
    except ValueError:
        raise H3ParseError("witness must be integers") from None
    if args.kind == "path":
        bad = validate_loose_path(H, seq)
    else:
        bad = validate_loose_cycle(H, seq)
        if bad is None and args.kind == "hamilton" and len(seq) != H.n:
            bad = Violation("min-length", f"cycle covers {len(seq)} of {H.n} vertices")
    if bad is None:
        print("ok")
        return EXIT_OK
    print(bad)
    return EXIT_VIOLATION


def _config(args) -> SolveConfig:
    base = SolveConfig()
    return SolveConfig(
        delta=args.delta if args.delta is not None else base.delta,
        beta=args.beta if args.beta is not None else base.beta,
        retries=args.retries if args.retries is not None else base.retries,
        oracle_cap=args.oracle_cap,
        jobs=args.jobs,
    )


def cmd_solve(args) -> int:
    H = _load(args)
    report = solve(H, _config(args), args.seed, args.method)
    text = report.to_json(indent=2) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    if report.detail:
        print(f"detail: {report.detail}", file=sys.stderr)
    return OUTCOME_EXIT[report.outcome]


def scan_rows(n_min: int, n_max: int, trials: int, seed: int, cap: int, jobs: int = 1) -> list[tuple]:
    """Rows ``(n, min_codegree, hamilton, seed)`` for even ``n`` in range.

    Deterministic rows (``seed == "-"``) cover the extremal construction
    matching ``n mod 4`` and the complete graph; random rows draw ``p``
    uniformly from ``[0.2, 0.8]``.
    """
    if n_max > cap:
        raise CliError(f"--n-max {n_max} exceeds --oracle-cap {cap}")
    if n_min > n_max:
        raise CliError("--n-min must not exceed --n-max")
    rng = np.random.default_rng(seed)
    rows = []

    def row(H: Hypergraph3, tag) -> tuple:
        res = find_hamilton_cycle(H, limit=cap, jobs=jobs)
        assert res.status is not OracleStatus.CAP_EXCEEDED
        return (H.n, min_codegree(H).min, "yes" if res.status is OracleStatus.CYCLE else "no", tag)

    for n in range(max(n_min, 6) + (max(n_min, 6) % 2), n_max + 1, 2):
        if n % 4 == 2:
            rows.append(row(generators.extremal_star(n), "-"))
        elif n >= 8:
            rows.append(row(generators.extremal_star_balanced(n), "-"))
        rows.append(row(generators.complete(n), "-"))
        for _ in range(trials):
            s = int(rng.integers(2**31))
            p = 0.2 + 0.6 * float(rng.random())
            rows.append(row(generators.random_density(n, p, s), s))
    return rows


def cmd_scan(args) -> int:
    rows = scan_rows(args.n_min, args.n_max, args.trials, args.seed, args.oracle_cap, args.jobs)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SCAN_COLUMNS)
    w.writerows(rows)
    if args.out:
        Path(args.out).write_text(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())
    return EXIT_OK


def cmd_absorbers(args) -> int:
    H = _load(args)
    res = enumerate_absorbers(H, args.v, args.w)
    print(res.count)
    for a in res.witnesses[: args.show]:
        print(" ".join(map(str, a.five)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="loosecycle", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_parse_flag(p):
        p.add_argument("--strict-parse", action="store_true",
                       help="reject unsorted triples, duplicates and a missing final newline")

    p = sub.add_parser("gen", help="write a generated hypergraph as .h3")
    p.add_argument("kind", choices=KINDS)
    p.add_argument("n", type=int)
    p.add_argument("--p", type=float, help="edge probability (random-density)")
    p.add_argument("--parts", help="part sizes a,b,c (tripartite)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("check", help="validate a loose path or cycle")
    p.add_argument("file")
    p.add_argument("kind", choices=("path", "cycle", "hamilton"))
    p.add_argument("witness", nargs="+", help="vertex sequence, space or comma separated")
    add_parse_flag(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("solve", help="search for a loose Hamilton cycle",
                       description="Exit 0: cycle found; 3: proven none; 4: pipeline failure.")
    p.add_argument("file")
    p.add_argument("--method", choices=METHODS, default="auto")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--oracle-cap", type=int, default=SolveConfig().oracle_cap)
    p.add_argument("--delta", type=float)
    p.add_argument("--beta", type=float)
    p.add_argument("--retries", type=int)
    p.add_argument("--out", help="write the report here instead of standard output")
    add_parse_flag(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("scan", help="oracle sweep over small n",
                       description="Emits CSV with columns n,min_codegree,hamilton,seed; "
                                   "seed is '-' for the deterministic extremal and complete rows.")
    p.add_argument("--n-min", type=int, default=6)
    p.add_argument("--n-max", type=int, default=10)
    p.add_argument("--trials", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--oracle-cap", type=int, default=SolveConfig().oracle_cap)
    p.add_argument("--out")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("absorbers", help="count absorbing 5-sets for a vertex pair")
    p.add_argument("file")
    p.add_argument("v", type=int)
    p.add_argument("w", type=int)
    p.add_argument("--show", type=int, default=0, help="also print this many witnesses")
    add_parse_flag(p)
    p.set_defaults(func=cmd_absorbers)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (H3ParseError, OSError, UnicodeDecodeError) as exc:
        print(f"error: cannot read input: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except HypergraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
