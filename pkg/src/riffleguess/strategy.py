"""Guessing strategies and their expected scores.

A no-feedback strategy fixes one guess per position in advance; its expected
score is the sum over positions of the probability that the guessed label
lands there.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

import numpy as np

from .errors import DomainError
from .transition import ProbMatrix

__all__ = [
    "Provenance",
    "Strategy",
    "ScoreReport",
    "exact_strategy",
    "closed_form_strategy",
    "literal_box_strategy",
    "position_probs",
    "expected_score",
    "asymptotic_expected",
    "argmax_ties",
    "score_report",
    "is_palindromic",
    "palindrome_violations",
]

Score = Union[Fraction, float]


class Provenance(enum.Enum):
    EXACT_ARGMAX = "exact-argmax"
    CLOSED_FORM = "closed-form"
    CUSTOM = "custom"


@dataclass(frozen=True)
class Strategy:
    n: int
    guesses: tuple[int, ...]
    provenance: Provenance = Provenance.CUSTOM

    def __post_init__(self):
        object.__setattr__(self, "guesses", tuple(int(g) for g in self.guesses))
        if len(self.guesses) != self.n:
            raise DomainError(f"expected {self.n} guesses, got {len(self.guesses)}")
        bad = [g for g in self.guesses if not 1 <= g <= self.n]
        if bad:
            raise DomainError(f"guesses outside 1..{self.n}: {bad[:5]}")

    def guess(self, i: int) -> int:
        return self.guesses[i - 1]


def palindrome_violations(s: Strategy) -> list[int]:
    """Positions i (top half) where ``guess[n+1-i] != n+1-guess[i]``.

    The middle position of an odd deck is its own mirror and is not checked:
    its row is symmetric about the centre label, so no single guess can be
    self-mirrored unless it is the centre label itself.
    """
    n = s.n
    return [i for i in range(1, n // 2 + 1) if s.guess(n + 1 - i) != n + 1 - s.guess(i)]


def is_palindromic(s: Strategy) -> bool:
    return not palindrome_violations(s)


def exact_strategy(P: ProbMatrix) -> Strategy:
    """Row-wise argmax of ``P``; ties go to the smallest label."""
    idx = P.data.argmax(axis=1)
    return Strategy(P.n, tuple(int(j) + 1 for j in idx), Provenance.EXACT_ARGMAX)


def _top_rule(i: int, k: int) -> int:
    return i // (1 << k) + 1


def closed_form_strategy(n: int, k: int) -> Strategy:
    """Blocks of width 2^k (the first one short by one), mirrored about the centre.

    Top half ``i <= (n+1)//2`` guesses ``i // 2^k + 1``; the rest guesses the
    mirror image of the top-half rule.  An unshuffled deck (k = 0) is guessed
    exactly.
    """
    if n < 1 or k < 0:
        raise DomainError(f"need n >= 1 and k >= 0, got n={n}, k={k}")
    if k == 0:
        return Strategy(n, tuple(range(1, n + 1)), Provenance.CLOSED_FORM)
    half = (n + 1) // 2
    guesses = [
        _top_rule(i, k) if i <= half else n + 1 - _top_rule(n + 1 - i, k)
        for i in range(1, n + 1)
    ]
    return Strategy(n, tuple(guesses), Provenance.CLOSED_FORM)


def literal_box_strategy(n: int, k: int) -> Strategy:
    """The bottom-half rule ``floor((n-i+1)(1-2^-k)) + i`` taken verbatim.

    Differs from :func:`closed_form_strategy` exactly where ``(n-i+1)/2^k``
    is an integer; kept for comparison.
    """
    if n < 1 or k < 1:
        raise DomainError(f"need n >= 1 and k >= 1, got n={n}, k={k}")
    half = (n + 1) // 2
    frac = Fraction((1 << k) - 1, 1 << k)
    guesses = [
        _top_rule(i, k) if i <= half else math.floor((n - i + 1) * frac) + i
        for i in range(1, n + 1)
    ]
    return Strategy(n, tuple(guesses), Provenance.CUSTOM)


def _check_sizes(P: ProbMatrix, s: Strategy) -> None:
    if P.n != s.n:
        raise DomainError(f"strategy for n={s.n} applied to n={P.n} matrix")


def position_probs(P: ProbMatrix, s: Strategy):
    """P(correct guess at position i) for every i, as a dyadic array or floats."""
    _check_sizes(P, s)
    rows = np.arange(P.n)
    cols = np.asarray(s.guesses) - 1
    if P.exact:
        return type(P.data)(P.data.num[rows, cols], P.data.exp)
    return P.data[rows, cols]


def expected_score(P: ProbMatrix, s: Strategy) -> Score:
    probs = position_probs(P, s)
    if P.exact:
        return probs.sum()
    return float(math.fsum(probs))


def asymptotic_expected(n: int, k: int) -> float:
    """Leading term ``2 sqrt(n) / sqrt((2^k - 1) pi)`` of the optimal score."""
    if n < 1:
        raise DomainError(f"deck size must be >= 1, got {n}")
    if k < 1:
        raise DomainError("asymptotic score needs k >= 1 (an unshuffled deck scores n)")
    return 2.0 * math.sqrt(n) / math.sqrt(((1 << k) - 1) * math.pi)


def argmax_ties(P: ProbMatrix, rel_tol: float = 1e-12) -> list[int]:
    """Positions whose row maximum is attained more than once.

    Exact rows compare equal numerators; float rows use ``rel_tol``.
    """
    ties = []
    if P.exact:
        for r in range(P.n):
            row = P.data.num[r]
            if list(row).count(max(row)) > 1:
                ties.append(r + 1)
        return ties
    top = np.max(P.data, axis=1, keepdims=True)
    counts = (P.data >= top * (1 - rel_tol)).sum(axis=1)
    return [int(r) + 1 for r in np.flatnonzero(counts > 1)]


@dataclass(frozen=True)
class ScoreReport:
    n: int
    k: int
    exact_expected: Score
    closed_form_expected: Score
    asymptotic: float | None
    per_position: Sequence
    tie_positions: tuple[int, ...] = ()


def score_report(P: ProbMatrix) -> ScoreReport:
    """Optimal and closed-form scores for one matrix, plus the leading-term estimate."""
    best = exact_strategy(P)
    closed = closed_form_strategy(P.n, P.k)
    per_position = position_probs(P, best)
    if P.exact:
        per_position = tuple(per_position)
    return ScoreReport(
        n=P.n,
        k=P.k,
        exact_expected=expected_score(P, best),
        closed_form_expected=expected_score(P, closed),
        asymptotic=asymptotic_expected(P.n, P.k) if P.k >= 1 else None,
        per_position=per_position,
        tie_positions=tuple(argmax_ties(P)),
    )
