"""Monte Carlo riffle shuffling.

One riffle shuffle draws ``n`` fair bits.  With ``c`` zero bits, the zero
positions receive the top ``c`` cards in order and the one positions the
remaining cards in order, so each of the 2^n interleavings is equally likely.

Trials are processed in fixed-size chunks.  Chunk ``c`` draws from
``SeedSequence(seed, spawn_key=(c,))``, so results depend only on
``(seed, trials, n, k)``, never on how many workers ran the chunks.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DomainError
from .strategy import Strategy

__all__ = [
    "SimConfig",
    "SimResult",
    "CHUNK_TRIALS",
    "riffle_from_bits",
    "gsr_shuffle",
    "shuffled_decks",
    "estimate_score",
    "estimate_matrix",
]

CHUNK_TRIALS = 8192


@dataclass(frozen=True)
class SimConfig:
    n: int
    k: int
    trials: int
    seed: int = 0

    def __post_init__(self):
        if self.n < 1 or self.k < 0:
            raise DomainError(f"need n >= 1 and k >= 0, got n={self.n}, k={self.k}")
        if self.trials < 1:
            raise DomainError(f"trials must be >= 1, got {self.trials}")
        if not 0 <= self.seed < 1 << 64:
            raise DomainError("seed must be a 64-bit unsigned integer")


@dataclass(frozen=True, eq=False)
class SimResult:
    trials: int
    mean_score: float
    variance: float
    std_error: float
    seed: int
    counts: Optional[np.ndarray] = None

    @property
    def frequencies(self) -> Optional[np.ndarray]:
        """Empirical transition matrix ``counts / trials``."""
        return None if self.counts is None else self.counts / self.trials

    def as_dict(self) -> dict:
        return {
            "trials": self.trials,
            "mean_score": self.mean_score,
            "variance": self.variance,
            "std_error": self.std_error,
            "seed": self.seed,
        }


def riffle_from_bits(decks: np.ndarray, bits: np.ndarray) -> np.ndarray:
    """Riffle each row of ``decks`` according to the matching row of ``bits``."""
    decks = np.atleast_2d(decks)
    bits = np.atleast_2d(bits).astype(np.int64)
    zero = 1 - bits
    cut = zero.sum(axis=1, keepdims=True)
    src = np.where(bits == 0,
                   np.cumsum(zero, axis=1) - 1,
                   cut + np.cumsum(bits, axis=1) - 1)
    return np.take_along_axis(decks, src, axis=1)


def gsr_shuffle(deck, rng: np.random.Generator) -> np.ndarray:
    """One riffle shuffle of a single deck."""
    deck = np.asarray(deck)
    bits = rng.integers(0, 2, size=deck.shape[-1], dtype=np.int8)
    return riffle_from_bits(deck[None, :], bits[None, :])[0]


def shuffled_decks(n: int, k: int, count: int, rng: np.random.Generator) -> np.ndarray:
    """``count`` independent sorted decks (labels 1..n) after ``k`` shuffles."""
    decks = np.tile(np.arange(1, n + 1, dtype=np.int32), (count, 1))
    for _ in range(k):
        bits = rng.integers(0, 2, size=(count, n), dtype=np.int8)
        decks = riffle_from_bits(decks, bits)
    return decks


def _chunks(cfg: SimConfig):
    for c, start in enumerate(range(0, cfg.trials, CHUNK_TRIALS)):
        size = min(CHUNK_TRIALS, cfg.trials - start)
        yield c, size


def _rng(seed: int, chunk: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(chunk,)))


def _map_chunks(cfg: SimConfig, fn, workers: int) -> list:
    jobs = list(_chunks(cfg))
    if workers <= 1:
        return [fn(c, size) for c, size in jobs]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        # map preserves submission order, so the merge is deterministic
        return list(pool.map(lambda job: fn(*job), jobs))


def estimate_score(cfg: SimConfig, s: Strategy, workers: int = 1) -> SimResult:
    """Sample the number of correct guesses made by ``s``."""
    if s.n != cfg.n:
        raise DomainError(f"strategy for n={s.n} used with n={cfg.n}")
    guesses = np.asarray(s.guesses, dtype=np.int32)

    def run(chunk: int, size: int) -> np.ndarray:
        decks = shuffled_decks(cfg.n, cfg.k, size, _rng(cfg.seed, chunk))
        return (decks == guesses).sum(axis=1)

    scores = np.concatenate(_map_chunks(cfg, run, workers))
    mean = float(scores.mean())
    var = float(scores.var(ddof=1)) if cfg.trials > 1 else 0.0
    return SimResult(cfg.trials, mean, var, math.sqrt(var / cfg.trials), cfg.seed)


def estimate_matrix(cfg: SimConfig, workers: int = 1) -> SimResult:
    """Tally (position, label) counts; the score fields refer to the identity guess."""
    n = cfg.n
    offsets = n * np.arange(n)

    def run(chunk: int, size: int):
        decks = shuffled_decks(n, cfg.k, size, _rng(cfg.seed, chunk))
        counts = np.bincount((decks - 1 + offsets).ravel(), minlength=n * n).reshape(n, n)
        return counts, (decks == np.arange(1, n + 1)).sum(axis=1)

    parts = _map_chunks(cfg, run, workers)
    counts = np.sum([p[0] for p in parts], axis=0)
    scores = np.concatenate([p[1] for p in parts])
    mean = float(scores.mean())
    var = float(scores.var(ddof=1)) if cfg.trials > 1 else 0.0
    return SimResult(cfg.trials, mean, var, math.sqrt(var / cfg.trials), cfg.seed, counts)
