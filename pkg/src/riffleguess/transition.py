"""Position-to-label transition matrices for repeated riffle shuffles.

Row ``i`` of the k-shuffle matrix is the distribution of the label found at
position ``i`` after a sorted deck has been riffle shuffled ``k`` times.
Positions and labels are 1-based throughout the public API.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterator, Union

import numpy as np
from scipy.stats import binom

from .dyadic import DyadicArray
from .errors import CapacityError, DomainError

__all__ = [
    "Backend",
    "ExactLimits",
    "DeckConfig",
    "ProbMatrix",
    "single_shuffle_prob",
    "single_shuffle_counts",
    "single_shuffle_matrix",
    "k_shuffle_matrix",
    "shuffle_powers",
    "row_pmf",
]


class Backend(enum.Enum):
    EXACT_RATIONAL = "exact"
    FLOAT64 = "float"

    @classmethod
    def coerce(cls, value) -> "Backend":
        if isinstance(value, cls):
            return value
        try:
            return cls(value)
        except ValueError:
            raise DomainError(f"unknown backend {value!r}") from None


@dataclass(frozen=True)
class ExactLimits:
    """Size guard for the exact backend (object-dtype matmul is O(n^3) bigint ops)."""

    max_n: int = 512
    max_k: int = 8

    def check(self, n: int, k: int) -> None:
        if n > self.max_n or k > self.max_k:
            raise CapacityError(
                f"exact backend limited to n <= {self.max_n}, k <= {self.max_k}; "
                f"got n={n}, k={k} (use the float backend or raise the limits)"
            )


DEFAULT_LIMITS = ExactLimits()


@dataclass(frozen=True)
class DeckConfig:
    n: int
    k: int = 1
    backend: Backend = Backend.EXACT_RATIONAL
    limits: ExactLimits = field(default=DEFAULT_LIMITS, compare=False)

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise DomainError(f"deck size must be a positive integer, got {self.n!r}")
        if int(self.k) != self.k or self.k < 0:
            raise DomainError(f"shuffle count must be a non-negative integer, got {self.k!r}")
        object.__setattr__(self, "backend", Backend.coerce(self.backend))
        if self.backend is Backend.EXACT_RATIONAL:
            self.limits.check(self.n, self.k)


Entry = Union[Fraction, float]


@dataclass(frozen=True, eq=False)
class ProbMatrix:
    """An n x n transition matrix under one numeric backend.

    ``data`` is a :class:`DyadicArray` for the exact backend and a float64
    ndarray otherwise; treat it as read-only.
    """

    n: int
    k: int
    backend: Backend
    data: Union[DyadicArray, np.ndarray]

    @property
    def exact(self) -> bool:
        return self.backend is Backend.EXACT_RATIONAL

    def _check_index(self, i: int, name: str = "position") -> None:
        if not 1 <= i <= self.n:
            raise DomainError(f"{name} {i} outside 1..{self.n}")

    def entry(self, i: int, j: int) -> Entry:
        self._check_index(i)
        self._check_index(j, "label")
        return self.data[i - 1, j - 1] if self.exact else float(self.data[i - 1, j - 1])

    def to_float(self) -> np.ndarray:
        return self.data.to_float() if self.exact else self.data

    def fractions(self) -> np.ndarray:
        if not self.exact:
            raise TypeError("fractions are only available for the exact backend")
        return self.data.reduced().fractions()

    def __eq__(self, other) -> bool:
        if not isinstance(other, ProbMatrix):
            return NotImplemented
        if (self.n, self.k, self.backend) != (other.n, other.k, other.backend):
            return False
        if self.exact:
            return self.data == other.data
        return bool(np.array_equal(self.data, other.data))

    __hash__ = None

    def __matmul__(self, other: "ProbMatrix") -> "ProbMatrix":
        if self.backend is not other.backend or self.n != other.n:
            raise DomainError("matrices must share size and backend")
        return ProbMatrix(self.n, self.k + other.k, self.backend, self.data @ other.data)


def _check_position(i: int, j: int, n: int) -> None:
    if n < 1:
        raise DomainError(f"deck size must be >= 1, got {n}")
    if not (1 <= i <= n and 1 <= j <= n):
        raise DomainError(f"(i, j) = ({i}, {j}) outside 1..{n}")


def _comb(m: int, r: int) -> int:
    return comb(m, r) if 0 <= r <= m else 0


def single_shuffle_prob(i: int, j: int, n: int) -> Fraction:
    """Probability that position ``i`` holds label ``j`` after one riffle shuffle.

    The first term covers label ``j`` coming from the top pile (needs
    ``j <= i``), the second from the bottom pile (needs ``j >= i``).

    >>> single_shuffle_prob(1, 1, 4)
    Fraction(9, 16)
    """
    _check_position(i, j, n)
    return Fraction(_comb(i - 1, j - 1), 1 << i) + Fraction(_comb(n - i, j - i), 1 << (n - i + 1))


def single_shuffle_counts(n: int) -> np.ndarray:
    """Integer matrix ``2**n * P`` (object dtype), the interleaving frequency table."""
    if n < 1:
        raise DomainError(f"deck size must be >= 1, got {n}")
    out = np.empty((n, n), dtype=object)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            # C(i-1,j-1) 2^(n-i) + C(n-i,j-i) 2^(i-1)  ==  2^n * single_shuffle_prob
            out[i - 1, j - 1] = (_comb(i - 1, j - 1) << (n - i)) + (_comb(n - i, j - i) << (i - 1))
    return out


def _single_shuffle_float(n: int) -> np.ndarray:
    i = np.arange(1, n + 1)[:, None]
    j = np.arange(1, n + 1)[None, :]
    return 0.5 * binom.pmf(j - 1, i - 1, 0.5) + 0.5 * binom.pmf(j - i, n - i, 0.5)


def single_shuffle_matrix(n: int, backend=Backend.EXACT_RATIONAL,
                          limits: ExactLimits = DEFAULT_LIMITS) -> ProbMatrix:
    cfg = DeckConfig(n, 1, backend, limits)
    if cfg.backend is Backend.EXACT_RATIONAL:
        return ProbMatrix(n, 1, cfg.backend, DyadicArray(single_shuffle_counts(n), n))
    return ProbMatrix(n, 1, cfg.backend, _single_shuffle_float(n))


def _identity(n: int, backend: Backend) -> ProbMatrix:
    if backend is Backend.EXACT_RATIONAL:
        return ProbMatrix(n, 0, backend, DyadicArray(np.eye(n, dtype=np.int64), 0))
    return ProbMatrix(n, 0, backend, np.eye(n))


def shuffle_powers(n: int, k_max: int, backend=Backend.EXACT_RATIONAL,
                   limits: ExactLimits = DEFAULT_LIMITS) -> Iterator[ProbMatrix]:
    """Yield P^(0), P^(1), ..., P^(k_max) by iterated left multiplication."""
    cfg = DeckConfig(n, k_max, backend, limits)
    current = _identity(n, cfg.backend)
    yield current
    if k_max == 0:
        return
    one = current = single_shuffle_matrix(n, cfg.backend, limits)
    yield current
    for _ in range(k_max - 1):
        # P^(m+1) = P^(1) P^(m): one more shuffle applied on top
        current = one @ current
        yield current


def k_shuffle_matrix(cfg: DeckConfig) -> ProbMatrix:
    """The k-fold power of the single-shuffle matrix (identity for k = 0)."""
    *_, last = shuffle_powers(cfg.n, cfg.k, cfg.backend, cfg.limits)
    return last


def row_pmf(P: ProbMatrix, i: int):
    """Row ``i``: the label distribution at position ``i``."""
    P._check_index(i)
    return P.data[i - 1]
