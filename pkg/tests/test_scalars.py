from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bottchern.scalars import GaussianRational, format_rational, parse_rational

rationals = st.fractions(max_denominator=50).filter(lambda q: abs(q) < 1000)
gaussian = st.builds(GaussianRational, rationals, rationals)


@given(gaussian, gaussian, gaussian)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == GaussianRational(0)


@given(gaussian)
def test_inverse_and_conjugate(a):
    if a:
        assert a * a.inverse() == GaussianRational(1)
    assert a.conjugate().conjugate() == a
    assert (a * a.conjugate()).is_real()


@given(gaussian)
def test_string_round_trip(a):
    assert GaussianRational.parse(str(a)) == a


def test_i_squared():
    i = GaussianRational(0, 1)
    assert i * i == GaussianRational(-1)
    assert str(GaussianRational(Fraction(1, 2), Fraction(-3, 4))) == "1/2-3/4i"


def test_float_complex_is_rejected():
    with pytest.raises(TypeError):
        GaussianRational.coerce(1 + 2j)


def test_rational_formatting():
    assert format_rational(Fraction(-1, 6)) == "-1/6"
    assert format_rational(Fraction(4, 2)) == "2"
    assert parse_rational(" -3/9 ") == Fraction(-1, 3)
