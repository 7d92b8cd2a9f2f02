from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from riffleguess.dyadic import DyadicArray, stack

dyadics = st.builds(lambda num, e: Fraction(num, 1 << e),
                    st.integers(-10**30, 10**30), st.integers(0, 80))


@given(st.lists(dyadics, min_size=1, max_size=8), st.data())
def test_add_matches_fractions(xs, data):
    ys = data.draw(st.lists(dyadics, min_size=len(xs), max_size=len(xs)))
    total = DyadicArray.from_fractions(xs) + DyadicArray.from_fractions(ys)
    assert total.tolist() == [a + b for a, b in zip(xs, ys)]


@given(st.lists(dyadics, min_size=1, max_size=6), st.lists(dyadics, min_size=1, max_size=6))
def test_convolve_matches_fractions(xs, ys):
    got = DyadicArray.from_fractions(xs).convolve(DyadicArray.from_fractions(ys)).tolist()
    want = [sum((xs[a] * ys[r - a] for a in range(len(xs)) if 0 <= r - a < len(ys)), Fraction(0))
            for r in range(len(xs) + len(ys) - 1)]
    assert got == want


def test_matmul_and_equality_ignore_exponent():
    a = DyadicArray([[1, 2], [3, 4]], 2)
    b = DyadicArray([[2, 4], [6, 8]], 3)
    assert a == b
    assert (a @ a).tolist() == [[Fraction(7, 16), Fraction(10, 16)], [Fraction(15, 16), Fraction(22, 16)]]
    assert a != DyadicArray([[1, 2], [3, 5]], 2)


def test_reduced_and_float():
    a = DyadicArray([4, 8, 12], 4)
    r = a.reduced()
    assert r.exp == 2 and list(r.num) == [1, 2, 3]
    np.testing.assert_array_equal(a.to_float(), [0.25, 0.5, 0.75])


def test_huge_exponent_to_float():
    a = DyadicArray([1 << 4000], 4001)
    assert a.to_float()[0] == 0.5


def test_indexing_returns_fraction_or_array():
    a = DyadicArray([[1, 3], [5, 7]], 3)
    assert a[1, 0] == Fraction(5, 8)
    assert a[1] == DyadicArray([5, 7], 3)
    assert a.sum() == 2


def test_rejects_non_dyadic_and_float_input():
    with pytest.raises(ValueError):
        DyadicArray.from_fractions([Fraction(1, 3)])
    with pytest.raises(TypeError):
        DyadicArray(np.array([0.5]), 0)


def test_stack_aligns_exponents():
    s = stack([DyadicArray([1, 1], 1), DyadicArray([1, 3], 2)])
    assert s.tolist() == [[Fraction(1, 2)] * 2, [Fraction(1, 4), Fraction(3, 4)]]
