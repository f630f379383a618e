import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bottchern.grassmann import (
    GeneratorUniverse,
    UPoly,
    bidegree_filter,
    conjugate,
    random_element,
    u_transgress,
)

U = GeneratorUniverse(2, 3)
seeds = st.integers(min_value=0, max_value=10**6)


def _element(seed, degree=None):
    return random_element(U, random.Random(seed), degree=degree)


@settings(max_examples=60, deadline=None)
@given(seeds, seeds, seeds)
def test_associative(s1, s2, s3):
    a, b, c = _element(s1), _element(s2), _element(s3)
    assert (a * b) * c == a * (b * c)


@settings(max_examples=60, deadline=None)
@given(seeds, seeds, st.integers(0, 4), st.integers(0, 4))
def test_supercommutative(s1, s2, da, db):
    a, b = _element(s1, da), _element(s2, db)
    assert a * b == b * a * (-1) ** (da * db)


@settings(max_examples=60, deadline=None)
@given(seeds, seeds)
def test_conjugation_is_an_antilinear_ring_involution(s1, s2):
    a, b = _element(s1), _element(s2)
    assert conjugate(conjugate(a)) == a
    assert conjugate(a * b) == conjugate(a) * conjugate(b)
    assert conjugate(a + b) == conjugate(a) + conjugate(b)


@settings(max_examples=50, deadline=None)
@given(seeds)
def test_bidegree_parts_partition_the_element(seed):
    a = _element(seed)
    assert sum((bidegree_filter(a, i, j) for i, j in a.bidegrees()), U.zero()) == a


def test_odd_generators_square_to_zero():
    for b in range(U.size):
        g = U.monomial([b])
        assert not g * g


def test_real_pairs_are_fixed_by_conjugation():
    assert conjugate(U.base_pair(1, 1)) == U.base_pair(1, 1)
    assert conjugate(U.fiber_pair(2, 3)) == U.fiber_pair(3, 2)
    assert conjugate(U.omega()) == U.omega()


def test_monomial_ordering_sign():
    assert U.monomial([1, 0]) == -U.monomial([0, 1])
    assert U.xi(1) * U.xib(1) == U.base_pair(1, 1)


def test_generator_cap():
    with pytest.raises(ValueError):
        GeneratorUniverse(10, 8)


def test_u_transgression_is_exact_integral():
    # (1-u)^2 * g:  integral of ((1-u)^2 - 1)/u over [0,1] is -2 + 1/2
    g = U.omega()
    p = UPoly.one_minus_u_power(U, 2, g)
    assert u_transgress(p) == g * Fraction(-3, 2)
    assert p.evaluate(0) == g and not p.evaluate(1)
