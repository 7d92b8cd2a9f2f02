"""Mixture decomposition of a k-shuffle row into 2^k Poisson-Binomial parts.

Row ``i`` of P^(k) is the equal-weight average of 2^k components.  Component
``t`` is the law of ``B1 + B2 + 1`` with independent
``B1 ~ Binomial(n - i, (t-1)/2^k)`` and ``B2 ~ Binomial(i - 1, t/2^k)``; its
generating function is ``g(a, b) = (ax + 1-a)^(n-i) (bx + 1-b)^(i-1) x``.

Three constructions of a component are provided and are expected to agree
exactly: expanding ``g`` factor by factor (:func:`component_pgf_coeffs`),
convolving two binomial pmfs (:func:`component_pmf`), and walking the
bisection tree with the averaging transforms (:func:`pgf_via_recursion`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import NamedTuple

import numpy as np
from scipy.stats import binom

from .dyadic import DyadicArray
from .errors import DomainError
from .transition import Backend

__all__ = [
    "ComponentIndex",
    "MixtureComponent",
    "Peak",
    "index_to_list",
    "list_to_index",
    "component",
    "components",
    "component_pgf_coeffs",
    "component_pmf",
    "pgf_via_recursion",
    "recompose",
    "component_moments",
    "highest_component",
    "peak_estimate",
    "first_component_mode",
    "last_component_mode",
    "peak_coincides",
]


@dataclass(frozen=True)
class ComponentIndex:
    """Leaf ``t`` of the bisection tree and its list ``L`` (outermost entry first)."""

    t: int
    bits: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.bits)

    def __post_init__(self):
        if list_to_index(self.bits) != self.t:
            raise DomainError(f"bits {self.bits} do not encode t={self.t}")


def index_to_list(t: int, k: int) -> ComponentIndex:
    """Map a leaf number to its list.

    Going down one level sends node ``t`` to ``2t-1`` (list ``[1, *L]``) or
    ``2t`` (list ``[2, *L]``).  The most recent step is the first list entry,
    so entry ``l`` is ``1 + `` bit ``l`` of ``t - 1``.

    >>> index_to_list(3, 2).bits
    (1, 2)
    """
    if k < 0:
        raise DomainError(f"k must be >= 0, got {k}")
    if not 1 <= t <= 1 << k:
        raise DomainError(f"t={t} outside 1..{1 << k}")
    bits = tuple(1 + (((t - 1) >> level) & 1) for level in range(k))
    return ComponentIndex(t, bits)


def list_to_index(bits) -> int:
    t = 1
    for b in reversed(tuple(bits)):
        if b == 1:
            t = 2 * t - 1
        elif b == 2:
            t = 2 * t
        else:
            raise DomainError(f"list entries must be 1 or 2, got {b!r}")
    return t


@dataclass(frozen=True)
class MixtureComponent:
    n: int
    i: int
    index: ComponentIndex
    shift: int = 1

    @property
    def k(self) -> int:
        return self.index.k

    @property
    def t(self) -> int:
        return self.index.t

    @property
    def b1_trials(self) -> int:
        return self.n - self.i

    @property
    def b1_prob(self) -> Fraction:
        return Fraction(self.t - 1, 1 << self.k)

    @property
    def b2_trials(self) -> int:
        return self.i - 1

    @property
    def b2_prob(self) -> Fraction:
        return Fraction(self.t, 1 << self.k)


def _check(n: int, i: int, k: int) -> None:
    if n < 1:
        raise DomainError(f"deck size must be >= 1, got {n}")
    if not 1 <= i <= n:
        raise DomainError(f"position {i} outside 1..{n}")
    if k < 0:
        raise DomainError(f"k must be >= 0, got {k}")


def component(n: int, i: int, k: int, t: int) -> MixtureComponent:
    _check(n, i, k)
    return MixtureComponent(n, i, index_to_list(t, k))


def components(n: int, i: int, k: int) -> list[MixtureComponent]:
    return [component(n, i, k, t) for t in range(1, (1 << k) + 1)]


# -- exact building blocks ------------------------------------------------


def _binomial_numerators(m: int, s: int, k: int) -> DyadicArray:
    """Exact Binomial(m, s/2^k) pmf over 0..m."""
    q = (1 << k) - s
    num = np.array([comb(m, r) * s**r * q ** (m - r) for r in range(m + 1)], dtype=object)
    return DyadicArray(num, k * m)


def _binomial_float(m: int, p: float) -> np.ndarray:
    return binom.pmf(np.arange(m + 1), m, p)


def _linear(a_num: int, k: int) -> DyadicArray:
    """The polynomial ``a x + (1 - a)`` with ``a = a_num / 2^k``."""
    return DyadicArray(np.array([(1 << k) - a_num, a_num], dtype=object), k)


def _times_linear(poly: DyadicArray, lin: DyadicArray) -> DyadicArray:
    c0, c1 = lin.num
    out = np.zeros(len(poly) + 1, dtype=object)
    out[:-1] += poly.num * c0
    out[1:] += poly.num * c1
    return DyadicArray(out, poly.exp + lin.exp)


def _poly_pow(base: DyadicArray, e: int) -> DyadicArray:
    result = DyadicArray(np.array([1], dtype=object), 0)
    while e:
        if e & 1:
            result = result.convolve(base)
        e >>= 1
        if e:
            base = base.convolve(base)
    return result


def _coefficients_1_to_n(poly: DyadicArray, n: int) -> DyadicArray:
    """Drop the x^0 coefficient (always zero here) and pad to length n."""
    if poly.num[0] != 0:
        raise AssertionError("generating function has a constant term")
    num = np.zeros(n, dtype=object)
    body = poly.num[1:]
    num[: len(body)] = body
    return DyadicArray(num, poly.exp)


# -- three constructions --------------------------------------------------


def component_pgf_coeffs(n: int, i: int, k: int, t: int) -> DyadicArray:
    """Coefficients of x^1..x^n in ``g((t-1)/2^k, t/2^k)``, expanded one factor at a time."""
    _check(n, i, k)
    index_to_list(t, k)
    poly = DyadicArray(np.array([0, 1], dtype=object), 0)  # the trailing x
    first, second = _linear(t - 1, k), _linear(t, k)
    for _ in range(n - i):
        poly = _times_linear(poly, first)
    for _ in range(i - 1):
        poly = _times_linear(poly, second)
    return _coefficients_1_to_n(poly, n)


def component_pmf(c: MixtureComponent, backend=Backend.EXACT_RATIONAL):
    """pmf over labels 1..n of ``Binomial(n-i, (t-1)/2^k) + Binomial(i-1, t/2^k) + 1``."""
    backend = Backend.coerce(backend)
    if backend is Backend.EXACT_RATIONAL:
        pmf = _binomial_numerators(c.b1_trials, c.t - 1, c.k).convolve(
            _binomial_numerators(c.b2_trials, c.t, c.k))
        # support of B1 + B2 is 0..n-1, i.e. labels 1..n after the shift
        return pmf
    return np.convolve(_binomial_float(c.b1_trials, float(c.b1_prob)),
                       _binomial_float(c.b2_trials, float(c.b2_prob)))


def pgf_via_recursion(n: int, i: int, k: int, t: int) -> DyadicArray:
    """Build the component by applying the averaging transforms down the tree.

    Writing the generating function as ``A^(n-i) B^(i-1) x`` with linear
    ``A`` and ``B``, the top-pile transform replaces ``B`` by ``(A+B)/2`` and
    the bottom-pile transform replaces ``A`` by ``(A+B)/2``.  Start from the
    unshuffled ``x^i`` (``A = 1``, ``B = x``) and apply the list entries
    innermost first.
    """
    _check(n, i, k)
    bits = index_to_list(t, k).bits
    A = DyadicArray(np.array([1, 0], dtype=object), 0)
    B = DyadicArray(np.array([0, 1], dtype=object), 0)
    for b in reversed(bits):
        mid = (A + B).halve()
        if b == 1:
            B = mid
        else:
            A = mid
    poly = _poly_pow(A, n - i).convolve(_poly_pow(B, i - 1))
    # multiply by x
    poly = DyadicArray(np.concatenate([np.zeros(1, dtype=object), poly.num]), poly.exp)
    return _coefficients_1_to_n(poly, n)


def recompose(n: int, i: int, k: int, backend=Backend.EXACT_RATIONAL):
    """Equal-weight average of the 2^k component pmfs; equals row ``i`` of P^(k)."""
    _check(n, i, k)
    backend = Backend.coerce(backend)
    parts = [component_pmf(c, backend) for c in components(n, i, k)]
    if backend is Backend.EXACT_RATIONAL:
        total = parts[0]
        for p in parts[1:]:
            total = total + p
        return total.halve(k)
    return np.sum(parts, axis=0) / (1 << k)


# -- moments and peaks ----------------------------------------------------


def component_moments(c: MixtureComponent) -> tuple[Fraction, Fraction]:
    """Exact mean and variance of the component."""
    a, b = c.b1_prob, c.b2_prob
    mean = c.b1_trials * a + c.b2_trials * b + 1
    var = c.b1_trials * a * (1 - a) + c.b2_trials * b * (1 - b)
    return mean, var


def highest_component(n: int, i: int, k: int) -> ComponentIndex:
    """Component with the smallest spread, hence the tallest peak for large n.

    Upper half of the deck (``i <= (n+1)//2``) picks the all-ones list,
    the lower half the all-twos list.
    """
    _check(n, i, k)
    return index_to_list(1 if i <= (n + 1) // 2 else 1 << k, k)


def first_component_mode(i: int, k: int) -> int:
    """Closed-form mode of ``Binomial(i-1, 2^-k) + 1``."""
    return i // (1 << k) + 1


def last_component_mode(n: int, i: int, k: int) -> int:
    """Closed-form mode of ``Binomial(n-i, 1-2^-k) + i``."""
    return math.floor((n - i + 1) * Fraction((1 << k) - 1, 1 << k)) + i


class Peak(NamedTuple):
    mode: int
    height: float
    degenerate: bool


def _argmax_toward_center(values, n: int) -> int:
    """1-based argmax; ties go to the label nearest (n+1)/2, then the smaller label."""
    best = max(values)
    tied = [j + 1 for j, v in enumerate(values) if v == best]
    return min(tied, key=lambda j: (abs(2 * j - (n + 1)), j))


def peak_estimate(c: MixtureComponent) -> Peak:
    """Exact mode of the component and its normal-approximation peak height.

    A zero-variance component is a point mass; its height is reported as 1
    with ``degenerate=True``.
    """
    pmf = component_pmf(c)
    mode = _argmax_toward_center(list(pmf.num), c.n)
    _, var = component_moments(c)
    if var == 0:
        return Peak(mode, 1.0, True)
    return Peak(mode, 1.0 / math.sqrt(2 * math.pi * var), False)


def peak_coincides(n: int, i: int, k: int, row=None) -> bool:
    """Whether the mixture's argmax equals the tallest component's mode.

    ``row`` may be an exact row of P^(k) to avoid recomputing it.
    """
    if row is None:
        row = recompose(n, i, k)
    nums = list(row.num) if isinstance(row, DyadicArray) else list(row)
    target = peak_estimate(MixtureComponent(n, i, highest_component(n, i, k))).mode
    return _argmax_toward_center(nums, n) == target
