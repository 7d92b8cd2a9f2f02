"""Exact arrays of dyadic rationals.

Every probability that appears in the riffle-shuffle model has a power-of-two
denominator, so an exact array only needs integer numerators and one shared
exponent: ``value = num / 2**exp``.  Numerators are Python ints held in an
object-dtype numpy array, which keeps numpy's indexing and matmul while the
arithmetic stays arbitrary precision.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator

import numpy as np


def _as_object(values) -> np.ndarray:
    if isinstance(values, np.ndarray) and values.dtype == object:
        return values
    arr = np.asarray(values)
    if arr.dtype.kind not in "iub" and arr.dtype != object:
        raise TypeError(f"integer numerators required, got {arr.dtype}")
    # np.asarray keeps numpy integer scalars; promote to Python int.
    out = np.empty(arr.shape, dtype=object)
    out[...] = arr.tolist() if arr.ndim else int(arr)
    return out


class DyadicArray:
    """An n-d array whose entries are ``num / 2**exp`` with integer ``num``."""

    __slots__ = ("num", "exp")
    __array_priority__ = 1000

    def __init__(self, num, exp: int = 0):
        if exp < 0:
            raise ValueError("exponent must be non-negative")
        self.num = _as_object(num)
        self.exp = int(exp)

    @classmethod
    def from_fractions(cls, values) -> "DyadicArray":
        fracs = np.asarray(values, dtype=object)
        exp = 0
        for f in fracs.flat:
            f = Fraction(f)
            d = f.denominator
            if d & (d - 1):
                raise ValueError(f"{f} is not dyadic")
            exp = max(exp, d.bit_length() - 1)
        num = np.empty(fracs.shape, dtype=object)
        for idx, f in np.ndenumerate(fracs):
            f = Fraction(f)
            num[idx] = f.numerator << (exp - (f.denominator.bit_length() - 1))
        return cls(num, exp)

    # -- shape plumbing ---------------------------------------------------

    @property
    def shape(self) -> tuple[int, ...]:
        return self.num.shape

    def __len__(self) -> int:
        return len(self.num)

    def __getitem__(self, idx):
        out = self.num[idx]
        if isinstance(out, np.ndarray):
            return DyadicArray(out, self.exp)
        return Fraction(out, 1 << self.exp)

    def __iter__(self) -> Iterator:
        for idx in range(len(self)):
            yield self[idx]

    # -- arithmetic -------------------------------------------------------

    def _aligned(self, other: "DyadicArray") -> tuple[np.ndarray, np.ndarray, int]:
        e = max(self.exp, other.exp)
        return self.num * (1 << (e - self.exp)), other.num * (1 << (e - other.exp)), e

    def __add__(self, other: "DyadicArray") -> "DyadicArray":
        a, b, e = self._aligned(other)
        return DyadicArray(a + b, e)

    def __sub__(self, other: "DyadicArray") -> "DyadicArray":
        a, b, e = self._aligned(other)
        return DyadicArray(a - b, e)

    def __matmul__(self, other: "DyadicArray") -> "DyadicArray":
        return DyadicArray(self.num @ other.num, self.exp + other.exp)

    def convolve(self, other: "DyadicArray") -> "DyadicArray":
        """1-d convolution, i.e. the coefficients of a polynomial product."""
        return DyadicArray(np.convolve(self.num, other.num), self.exp + other.exp)

    def halve(self, times: int = 1) -> "DyadicArray":
        return DyadicArray(self.num, self.exp + times)

    def sum(self, axis=None):
        s = self.num.sum(axis=axis)
        if isinstance(s, np.ndarray):
            return DyadicArray(s, self.exp)
        return Fraction(int(s), 1 << self.exp)

    # -- comparisons / conversion ----------------------------------------

    def __eq__(self, other) -> bool:
        """Exact whole-array equality (returns a single bool)."""
        if not isinstance(other, DyadicArray):
            return NotImplemented
        if self.shape != other.shape:
            return False
        a, b, _ = self._aligned(other)
        return bool(np.all(a == b))

    __hash__ = None

    def argmax(self, axis=None):
        return np.argmax(self.num, axis=axis)

    def reduced(self) -> "DyadicArray":
        """Same values with the smallest possible shared exponent."""
        e = self.exp
        nz = [int(v) for v in self.num.flat if v]
        if not nz:
            return DyadicArray(np.zeros(self.shape, dtype=object), 0)
        # trailing zero bits common to every numerator
        common = min((v & -v).bit_length() - 1 for v in nz)
        shift = min(common, e)
        return DyadicArray(self.num // (1 << shift), e - shift)

    def to_float(self) -> np.ndarray:
        # int / int true division is correctly rounded even for huge operands
        denom = 1 << self.exp
        return np.vectorize(lambda v: v / denom, otypes=[float])(self.num)

    def fractions(self) -> np.ndarray:
        denom = 1 << self.exp
        return np.vectorize(lambda v: Fraction(v, denom), otypes=[object])(self.num)

    def tolist(self) -> list:
        return self.fractions().tolist()

    def __repr__(self) -> str:
        return f"DyadicArray(shape={self.shape}, exp={self.exp})"


def stack(rows: Iterable[DyadicArray]) -> DyadicArray:
    rows = list(rows)
    e = max(r.exp for r in rows)
    return DyadicArray(np.stack([r.num * (1 << (e - r.exp)) for r in rows]), e)
