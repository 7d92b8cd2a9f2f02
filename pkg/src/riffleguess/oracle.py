"""Brute-force ground truth.

Nothing here uses the closed forms it is meant to check: shuffles are
enumerated bit string by bit string, and mixture components are evaluated as
literal nested sums of binomial weights.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

import numpy as np

from .dyadic import DyadicArray
from .errors import CapacityError, DomainError

__all__ = [
    "FrequencyMatrix",
    "MAX_ENUMERATION_BITS",
    "interleavings",
    "enumerate_single_shuffle",
    "enumerate_k_shuffle",
    "top_pile_weight",
    "bottom_pile_weight",
    "brute_force_pL",
]

# 2**20 outcomes keeps every enumeration to a few seconds.
MAX_ENUMERATION_BITS = 20
_CHUNK = 1 << 14


@dataclass(frozen=True, eq=False)
class FrequencyMatrix:
    """``counts[i-1, j-1]``: outcomes with label ``j`` at position ``i``."""

    n: int
    k: int
    counts: np.ndarray
    total: int

    def normalized(self) -> DyadicArray:
        # total is always 2**(k*n)
        return DyadicArray(self.counts, self.total.bit_length() - 1)


def interleavings(n: int) -> np.ndarray:
    """Source index (0-based) for each position, one row per n-bit string.

    Row ``s`` reads bit ``p`` of ``s`` for position ``p``.  With ``c`` zero
    bits, the zero positions take cards ``0..c-1`` in order (top pile) and
    the one positions take cards ``c..n-1`` (bottom pile).
    """
    s = np.arange(1 << n, dtype=np.int64)[:, None]
    bits = (s >> np.arange(n)) & 1
    zeros_before = np.cumsum(1 - bits, axis=1) - (1 - bits)
    ones_before = np.cumsum(bits, axis=1) - bits
    cut = (1 - bits).sum(axis=1, keepdims=True)
    return np.where(bits == 0, zeros_before, cut + ones_before).astype(np.int16)


def _tally(decks: np.ndarray, n: int) -> np.ndarray:
    flat = decks.astype(np.int64) + n * np.arange(n)
    return np.bincount(flat.ravel(), minlength=n * n).reshape(n, n)


def enumerate_single_shuffle(n: int) -> FrequencyMatrix:
    if n < 1:
        raise DomainError(f"deck size must be >= 1, got {n}")
    if n > 16:
        raise CapacityError(f"single-shuffle enumeration limited to n <= 16, got {n}")
    return enumerate_k_shuffle(n, 1)


def enumerate_k_shuffle(n: int, k: int) -> FrequencyMatrix:
    """Apply every k-tuple of interleavings to the sorted deck and tally labels.

    Shuffle ``m`` maps the deck ``d`` to ``d[sigma_m]``; the tuples are
    walked in chunks of the first shuffle so memory stays bounded.
    """
    if n < 1 or k < 0:
        raise DomainError(f"need n >= 1 and k >= 0, got n={n}, k={k}")
    if k * n > MAX_ENUMERATION_BITS:
        raise CapacityError(f"enumeration needs k*n <= {MAX_ENUMERATION_BITS}, got {k * n}")
    counts = np.zeros((n, n), dtype=np.int64)
    if k == 0:
        counts[np.arange(n), np.arange(n)] = 1
        return FrequencyMatrix(n, 0, counts, 1)
    sigma = interleavings(n)
    inner = max(1, _CHUNK >> (n * (k - 1)))
    for start in range(0, len(sigma), inner):
        decks = sigma[start:start + inner]  # deck after the first shuffle
        for _ in range(k - 1):
            decks = decks[:, sigma].reshape(-1, n)
        counts += _tally(decks, n)
    return FrequencyMatrix(n, k, counts, 1 << (k * n))


def top_pile_weight(i: int, j: int) -> Fraction:
    """Probability the card at ``i`` came from top-pile slot ``j``, given the top pile was chosen."""
    return Fraction(comb(i - 1, j - 1), 1 << (i - 1)) if 1 <= j <= i else Fraction(0)


def bottom_pile_weight(i: int, j: int, n: int) -> Fraction:
    return Fraction(comb(n - i, j - i), 1 << (n - i)) if i <= j <= n else Fraction(0)


def brute_force_pL(n: int, i: int, k: int, L: Sequence[int], j: int) -> Fraction:
    """Component ``L`` at label ``j`` as the literal (k-1)-fold nested sum.

    ``sum_{s_1..s_{k-1}} w[L1](i, s_1) w[L2](s_1, s_2) ... w[Lk](s_{k-1}, j)``.
    """
    if n > 12 or k > 3:
        raise CapacityError(f"nested-sum oracle limited to n <= 12, k <= 3; got n={n}, k={k}")
    if len(L) != k or any(b not in (1, 2) for b in L):
        raise DomainError(f"L must be a length-{k} list over {{1, 2}}, got {L!r}")
    if not (1 <= i <= n and 1 <= j <= n):
        raise DomainError(f"(i, j) = ({i}, {j}) outside 1..{n}")

    def w(b: int, r: int, c: int) -> Fraction:
        return top_pile_weight(r, c) if b == 1 else bottom_pile_weight(r, c, n)

    if k == 0:
        return Fraction(int(i == j))
    total = Fraction(0)
    for inner in itertools.product(range(1, n + 1), repeat=k - 1):
        path = (i, *inner, j)
        term = Fraction(1)
        for b, r, c in zip(L, path, path[1:]):
            term *= w(b, r, c)
            if not term:
                break
        total += term
    return total
