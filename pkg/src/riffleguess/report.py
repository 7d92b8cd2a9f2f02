"""Headline comparison table across a grid of deck sizes and shuffle counts."""

from __future__ import annotations

from typing import Iterable

from .simulator import SimConfig, estimate_score
from .strategy import (asymptotic_expected, closed_form_strategy, exact_strategy,
                       expected_score)
from .transition import Backend, shuffle_powers


def _number(x):
    return float(x)


def build_report(ns: Iterable[int], ks: Iterable[int], trials: int, seed: int,
                 backend=Backend.FLOAT64) -> dict:
    """Exact-argmax, closed-form, leading-term and Monte Carlo scores per (n, k)."""
    backend = Backend.coerce(backend)
    ks = sorted(set(ks))
    rows = []
    for n in ns:
        wanted = set(ks)
        for P in shuffle_powers(n, max(ks), backend):
            if P.k not in wanted:
                continue
            best = exact_strategy(P)
            closed = closed_form_strategy(n, P.k)
            closed_score = expected_score(P, closed)
            sim = estimate_score(SimConfig(n, P.k, trials, seed), closed)
            rows.append({
                "n": n,
                "k": P.k,
                "exact_expected": _number(expected_score(P, best)),
                "closed_form_expected": _number(closed_score),
                "asymptotic": asymptotic_expected(n, P.k) if P.k >= 1 else None,
                "strategies_agree": best.guesses == closed.guesses,
                "monte_carlo": {
                    **sim.as_dict(),
                    "z_vs_closed_form": (sim.mean_score - _number(closed_score)) / sim.std_error
                    if sim.std_error > 0 else 0.0,
                },
            })
    return {
        "schema": "riffleguess.report/1",
        "backend": backend.value,
        "seed": seed,
        "trials": trials,
        "rows": rows,
    }
