"""Cross-checks of every closed form against independent constructions."""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable, Iterator

import numpy as np

from . import mixture, oracle
from .dyadic import DyadicArray
from .transition import Backend, ExactLimits, shuffle_powers, single_shuffle_matrix

__all__ = ["CheckResult", "CHECKS", "run_checks"]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float


def _enumeration_single(max_n: int) -> tuple[bool, str]:
    bad = [n for n in range(1, max_n + 1)
           if oracle.enumerate_single_shuffle(n).normalized() != single_shuffle_matrix(n).data]
    return not bad, f"n <= {max_n}; mismatches at {bad}" if bad else f"n <= {max_n}"


def _enumeration_k(max_bits: int) -> tuple[bool, str]:
    bad = []
    for k in range(1, max_bits + 1):
        top = max_bits // k
        if top == 0:
            continue
        for n in range(1, top + 1):
            # powers beyond the default exact k limit are still tiny here
            *_, P = shuffle_powers(n, k, limits=ExactLimits(max_n=512, max_k=max_bits))
            if oracle.enumerate_k_shuffle(n, k).normalized() != P.data:
                bad.append((n, k))
    return not bad, f"k*n <= {max_bits}; mismatches at {bad}" if bad else f"k*n <= {max_bits}"


def _matrix_invariants(max_n: int, max_k: int) -> tuple[bool, str]:
    failures = []
    for n in range(1, max_n + 1):
        for P in list(shuffle_powers(n, max_k))[1:]:
            num, total = P.data.num, 1 << P.data.exp
            if any(v != total for v in num.sum(axis=0)) or any(v != total for v in num.sum(axis=1)):
                failures.append(("stochastic", n, P.k))
            if not np.array_equal(num, num[::-1, ::-1]):
                failures.append(("symmetry", n, P.k))
    return not failures, f"n <= {max_n}, k <= {max_k}; failures {failures[:5]}" if failures \
        else f"n <= {max_n}, k <= {max_k}"


def _backend_agreement(max_n: int, max_k: int) -> tuple[bool, str]:
    worst = 0.0
    for n in range(1, max_n + 1):
        exact = shuffle_powers(n, max_k)
        fl = shuffle_powers(n, max_k, Backend.FLOAT64)
        for a, b in zip(exact, fl):
            worst = max(worst, float(np.max(np.abs(a.to_float() - b.data))))
    return worst <= 1e-10, f"max |exact - float| = {worst:.3g} (tol 1e-10)"


def _recomposition(max_n: int, max_k: int) -> tuple[bool, str]:
    bad = []
    for n in range(1, max_n + 1):
        for P in shuffle_powers(n, max_k):
            for i in range(1, n + 1):
                if mixture.recompose(n, i, P.k) != P.data[i - 1]:
                    bad.append((n, P.k, i))
    return not bad, f"n <= {max_n}, k <= {max_k}; mismatches {bad[:5]}" if bad \
        else f"n <= {max_n}, k <= {max_k}"


def _three_constructions(max_n: int, max_k: int) -> tuple[bool, str]:
    bad = []
    for n in range(1, max_n + 1):
        for k in range(max_k + 1):
            for i in range(1, n + 1):
                for c in mixture.components(n, i, k):
                    pmf = mixture.component_pmf(c)
                    if not (mixture.component_pgf_coeffs(n, i, k, c.t) == pmf
                            == mixture.pgf_via_recursion(n, i, k, c.t)):
                        bad.append((n, k, i, c.t))
    return not bad, f"n <= {max_n}, k <= {max_k}; mismatches {bad[:5]}" if bad \
        else f"n <= {max_n}, k <= {max_k}"


def _nested_sums(max_n: int, max_k: int) -> tuple[bool, str]:
    bad = []
    for n in range(1, max_n + 1):
        for k in range(max_k + 1):
            for i in range(1, n + 1):
                for c in mixture.components(n, i, k):
                    direct = [oracle.brute_force_pL(n, i, k, c.index.bits, j) for j in range(1, n + 1)]
                    if DyadicArray.from_fractions(direct) != mixture.component_pmf(c):
                        bad.append((n, k, i, c.t))
    return not bad, f"n <= {max_n}, k <= {max_k}; mismatches {bad[:5]}" if bad \
        else f"n <= {max_n}, k <= {max_k}"


def _nested_sums_recompose(max_bits: int) -> tuple[bool, str]:
    """Average of nested-sum components equals the enumerated row."""
    bad = []
    for k in range(1, 4):
        for n in range(1, min(12, max_bits // k) + 1):
            freq = oracle.enumerate_k_shuffle(n, k).normalized()
            for i in range(1, n + 1):
                row = [sum(oracle.brute_force_pL(n, i, k, c.index.bits, j)
                           for c in mixture.components(n, i, k)) / (1 << k)
                       for j in range(1, n + 1)]
                if DyadicArray.from_fractions(row) != freq[i - 1]:
                    bad.append((n, k, i))
    return not bad, f"k*n <= {max_bits}, k <= 3; mismatches {bad[:5]}" if bad \
        else f"k*n <= {max_bits}, k <= 3"


Check = Callable[[], tuple[bool, str]]

CHECKS: dict[str, tuple[Check, Check]] = {
    # name: (full, quick)
    "enumeration-single-shuffle": (lambda: _enumeration_single(12), lambda: _enumeration_single(8)),
    "enumeration-k-shuffle": (lambda: _enumeration_k(20), lambda: _enumeration_k(12)),
    "doubly-stochastic-and-symmetric": (lambda: _matrix_invariants(64, 4), lambda: _matrix_invariants(16, 3)),
    "backend-agreement": (lambda: _backend_agreement(64, 4), lambda: _backend_agreement(16, 3)),
    "mixture-recomposition": (lambda: _recomposition(48, 4), lambda: _recomposition(12, 3)),
    "three-constructions": (lambda: _three_constructions(48, 4), lambda: _three_constructions(10, 3)),
    "nested-sum-components": (lambda: _nested_sums(10, 3), lambda: _nested_sums(6, 2)),
    "nested-sum-recomposes-enumeration": (lambda: _nested_sums_recompose(20),
                                          lambda: _nested_sums_recompose(10)),
}


def run_checks(quick: bool = False) -> Iterator[CheckResult]:
    for name, (full, fast) in CHECKS.items():
        start = time.perf_counter()
        passed, detail = (fast if quick else full)()
        yield CheckResult(name, passed, detail, time.perf_counter() - start)
