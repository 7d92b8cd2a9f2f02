"""Command-line front end.

Exit codes: 0 success, 1 a verification check failed, 2 usage or domain
error, 3 capacity limit exceeded.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import mixture
from .errors import CapacityError, DomainError
from .report import build_report
from .simulator import SimConfig, estimate_matrix, estimate_score
from .strategy import (asymptotic_expected, closed_form_strategy, exact_strategy,
                       expected_score, literal_box_strategy, position_probs)
from .transition import Backend, DeckConfig, ProbMatrix, k_shuffle_matrix
from .verify import run_checks

DEFAULT_SEED = 20240601


def _float_str(x) -> str:
    return format(float(x), ".17g")


def _frac_str(x) -> str:
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    return ""


def _values(vec, exact: bool) -> list:
    """Plain Python list of Fractions (exact) or floats."""
    return list(vec) if exact else [float(v) for v in vec]


@contextlib.contextmanager
def _sink(path: Optional[str]):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            yield fh


def _emit(args, fields: list[str], rows: list[dict], meta: dict) -> None:
    with _sink(args.out) as fh:
        if args.format == "csv":
            writer = csv.DictWriter(fh, fieldnames=fields, lineterminator="\n")
            writer.writeheader()
            for row in rows:
                writer.writerow({k: _float_str(row[k]) if isinstance(row[k], float) else row[k]
                                 for k in fields})
        else:
            json.dump({**meta, "rows": rows}, fh, indent=2)
            fh.write("\n")


def _emit_json(args, doc: dict) -> None:
    with _sink(args.out) as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")


def _matrix(args) -> ProbMatrix:
    cfg = DeckConfig(args.n, args.k, Backend.coerce(args.backend))
    return k_shuffle_matrix(cfg)


# -- subcommands ----------------------------------------------------------


def cmd_matrix(args) -> int:
    P = _matrix(args)
    values = P.fractions() if P.exact else P.data
    rows = []
    for i in range(P.n):
        for j in range(P.n):
            v = values[i, j]
            rows.append({"i": i + 1, "j": j + 1, "prob_fraction": _frac_str(v),
                         "prob_float": float(v)})
    meta = {"schema": "riffleguess.matrix/1", "n": P.n, "k": P.k, "backend": P.backend.value}
    _emit(args, ["i", "j", "prob_fraction", "prob_float"], rows, meta)
    return 0


def cmd_strategy(args) -> int:
    P = _matrix(args)
    s = exact_strategy(P) if args.kind == "exact" else closed_form_strategy(P.n, P.k)
    probs = _values(position_probs(P, s), P.exact)
    fields = ["i", "guess", "prob_correct", "prob_correct_fraction"]
    if args.literal_box:
        lit = literal_box_strategy(P.n, P.k)
        lit_probs = _values(position_probs(P, lit), P.exact)
        fields += ["literal_guess", "literal_prob_correct"]
    rows = []
    for i in range(P.n):
        row = {"i": i + 1, "guess": s.guesses[i], "prob_correct": float(probs[i]),
               "prob_correct_fraction": _frac_str(probs[i])}
        if args.literal_box:
            row["literal_guess"] = lit.guesses[i]
            row["literal_prob_correct"] = float(lit_probs[i])
        rows.append(row)
    meta = {"schema": "riffleguess.strategy/1", "n": P.n, "k": P.k,
            "backend": P.backend.value, "provenance": s.provenance.value}
    _emit(args, fields, rows, meta)
    return 0


def cmd_expected(args) -> int:
    P = _matrix(args)
    best = expected_score(P, exact_strategy(P))
    closed = expected_score(P, closed_form_strategy(P.n, P.k))
    row = {
        "n": P.n, "k": P.k, "backend": P.backend.value,
        "exact_expected": float(best), "exact_expected_fraction": _frac_str(best),
        "closed_form_expected": float(closed),
        "closed_form_expected_fraction": _frac_str(closed),
        "asymptotic": asymptotic_expected(P.n, P.k) if P.k >= 1 else None,
    }
    if args.literal_box and P.k >= 1:
        row["literal_box_expected"] = float(expected_score(P, literal_box_strategy(P.n, P.k)))
    _emit(args, list(row), [row], {"schema": "riffleguess.expected/1"})
    return 0


def cmd_mixture(args) -> int:
    if args.i is None:
        raise DomainError("--i is required for the mixture subcommand")
    backend = Backend.coerce(args.backend)
    DeckConfig(args.n, args.k, backend)  # validates ranges and limits
    rows = []
    for c in mixture.components(args.n, args.i, args.k):
        pmf = _values(mixture.component_pmf(c, backend), backend is Backend.EXACT_RATIONAL)
        bits = "".join(str(b) for b in c.index.bits)
        for j, v in enumerate(pmf, start=1):
            rows.append({"t": c.t, "L_bits": bits, "j": j, "pmf": float(v),
                         "pmf_fraction": _frac_str(v)})
    meta = {"schema": "riffleguess.mixture/1", "n": args.n, "k": args.k, "i": args.i,
            "backend": backend.value}
    _emit(args, ["t", "L_bits", "j", "pmf", "pmf_fraction"], rows, meta)
    return 0


def cmd_simulate(args) -> int:
    cfg = SimConfig(args.n, args.k, args.trials, args.seed)
    if args.strategy == "exact":
        s = exact_strategy(_matrix(args))
    elif args.strategy == "identity":
        s = closed_form_strategy(args.n, 0)
    else:
        s = closed_form_strategy(args.n, args.k)
    result = estimate_score(cfg, s, workers=args.workers)
    doc = {"schema": "riffleguess.simulate/1", "n": args.n, "k": args.k,
           "strategy": args.strategy, **result.as_dict()}
    if args.with_matrix:
        doc["counts"] = estimate_matrix(cfg, workers=args.workers).counts.tolist()
    _emit_json(args, doc)
    return 0


def cmd_verify(args) -> int:
    failed = 0
    with _sink(args.out) as fh:
        for r in run_checks(quick=args.quick):
            failed += not r.passed
            fh.write(f"{'PASS' if r.passed else 'FAIL'} {r.name}: {r.detail} [{r.seconds:.2f}s]\n")
            fh.flush()
        fh.write(f"{'all checks passed' if not failed else f'{failed} check(s) failed'}\n")
    return 1 if failed else 0


def cmd_report(args) -> int:
    _emit_json(args, build_report(args.n, args.k, args.trials, args.seed, args.backend))
    return 0


# -- parser ---------------------------------------------------------------


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="riffleguess",
        description="No-feedback card guessing after k riffle shuffles.")
    sub = parser.add_subparsers(dest="command", required=True)

    def deck(p, backend="exact"):
        p.add_argument("--n", type=_positive, required=True, help="deck size")
        p.add_argument("--k", type=_nonneg, default=1, help="number of shuffles")
        p.add_argument("--backend", choices=["exact", "float"], default=backend)

    def output(p, formats=True):
        if formats:
            p.add_argument("--format", choices=["csv", "json"], default="csv")
        p.add_argument("--out", metavar="FILE", help="write to FILE instead of stdout")

    p = sub.add_parser("matrix", help="transition matrix P^(k)")
    deck(p)
    output(p)
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("strategy", help="guess per position")
    deck(p)
    p.add_argument("--kind", choices=["closed-form", "exact"], default="closed-form")
    p.add_argument("--literal-box", action="store_true",
                   help="also list the verbatim bottom-half formula")
    output(p)
    p.set_defaults(func=cmd_strategy)

    p = sub.add_parser("expected", help="expected number of correct guesses")
    deck(p)
    p.add_argument("--literal-box", action="store_true")
    output(p)
    p.set_defaults(func=cmd_expected)

    p = sub.add_parser("mixture", help="per-component pmfs of one row")
    deck(p)
    p.add_argument("--i", type=_positive, help="row (card position)")
    output(p)
    p.set_defaults(func=cmd_mixture)

    p = sub.add_parser("simulate", help="Monte Carlo score estimate (JSON summary)")
    deck(p)
    p.add_argument("--trials", type=_positive, default=100_000)
    p.add_argument("--seed", type=_nonneg, default=DEFAULT_SEED)
    p.add_argument("--strategy", choices=["closed-form", "exact", "identity"],
                   default="closed-form")
    p.add_argument("--with-matrix", action="store_true", help="include empirical counts")
    p.add_argument("--workers", type=_positive, default=1)
    output(p, formats=False)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("verify", help="run the brute-force oracle suite")
    p.add_argument("--quick", action="store_true", help="smaller grids")
    output(p, formats=False)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("report", help="JSON comparison across an (n, k) grid")
    p.add_argument("--n", type=_positive, nargs="+", default=[52, 128])
    p.add_argument("--k", type=_positive, nargs="+", default=[1, 2, 3])
    p.add_argument("--backend", choices=["exact", "float"], default="float")
    p.add_argument("--trials", type=_positive, default=20_000)
    p.add_argument("--seed", type=_nonneg, default=DEFAULT_SEED)
    output(p, formats=False)
    p.set_defaults(func=cmd_report)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except CapacityError as exc:
        print(f"riffleguess: capacity error: {exc}", file=sys.stderr)
        return 3
    except DomainError as exc:
        print(f"riffleguess: error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())
