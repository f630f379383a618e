from fractions import Fraction
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bottchern.combinatorics import (
    Partition,
    binomial,
    curly_h,
    enumerate_compositions,
    enumerate_partitions,
    harmonic,
    run_lengths,
)

# p(1..10)
PARTITION_COUNTS = [1, 2, 3, 5, 7, 11, 15, 22, 30, 42]


@pytest.mark.parametrize("w", range(1, 11))
def test_counts(w):
    assert len(enumerate_compositions(w)) == 2 ** (w - 1)
    assert len(enumerate_partitions(w)) == PARTITION_COUNTS[w - 1]
    assert len({c.parts for c in enumerate_compositions(w)}) == 2 ** (w - 1)


@pytest.mark.parametrize("s", range(1, 9))
def test_signed_composition_sum(s):
    total = sum((Fraction((-1) ** c.length, c.length) for c in enumerate_compositions(s)), Fraction(0))
    assert total == Fraction(-1, s)


def test_partition_heights():
    p = Partition((1, 1, 2, 3, 3, 3))
    assert p.height == (2, 1, 3)
    assert p.height_factorial == 2 * 1 * 6
    assert run_lengths(()) == ()
    with pytest.raises(ValueError):
        Partition((2, 1))


def test_max_part():
    assert [p.parts for p in enumerate_partitions(4, max_part=2)] == [(1, 1, 1, 1), (1, 1, 2), (2, 2)]


@given(st.integers(0, 40))
def test_harmonic_recurrence(s):
    assert harmonic(s + 1) - harmonic(s) == Fraction(1, s + 1)


@given(st.integers(0, 12), st.integers(0, 12))
def test_curly_h_definition(a, extra):
    b = a + extra
    expected = sum((harmonic(i) * Fraction(comb(a, i), comb(b, i)) for i in range(1, a + 1)), Fraction(0))
    assert curly_h(a, b) == expected


def test_curly_h_small_values():
    assert curly_h(1, 1) == 1
    assert curly_h(1, 2) == Fraction(1, 2)
    assert curly_h(2, 2) == Fraction(5, 2)


def test_invalid_arguments():
    with pytest.raises(ValueError):
        enumerate_compositions(0)
    with pytest.raises(ValueError):
        curly_h(3, 2)
    with pytest.raises(ValueError):
        harmonic(-1)
    assert binomial(3, 5) == 0 and binomial(5, 2) == 10


def _partition_count(w):
    # Euler's pentagonal recurrence, independent of the enumerator
    p = [1] + [0] * w
    for m in range(1, w + 1):
        k, total = 1, 0
        while True:
            g1, g2 = k * (3 * k - 1) // 2, k * (3 * k + 1) // 2
            if g1 > m:
                break
            sign = 1 if k % 2 else -1
            total += sign * p[m - g1]
            if g2 <= m:
                total += sign * p[m - g2]
            k += 1
        p[m] = total
    return p[w]


@pytest.mark.parametrize("w", range(1, 16))
def test_partition_count_recurrence(w):
    assert len(enumerate_partitions(w)) == _partition_count(w)


@pytest.mark.parametrize("w", range(1, 9))
def test_compositions_group_into_partitions(w):
    from collections import Counter
    from math import factorial

    groups = Counter(tuple(sorted(c.parts)) for c in enumerate_compositions(w))
    for B in enumerate_partitions(w):
        assert groups.pop(B.parts) == factorial(B.length) // B.height_factorial
    assert not groups
