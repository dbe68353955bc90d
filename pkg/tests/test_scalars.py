from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gencore.scalars import GaussianRational, format_rational, parse_rational

fractions = st.fractions(max_denominator=50).filter(lambda q: abs(q.numerator) < 10**6)
gaussians = st.builds(GaussianRational, fractions, fractions)
nonzero = gaussians.filter(bool)


@given(gaussians, gaussians, gaussians)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert a + GaussianRational(0) == a and a * GaussianRational(1) == a
    assert a - a == GaussianRational(0)


@given(nonzero)
def test_multiplicative_inverse(a):
    assert a * a.inverse() == GaussianRational(1)
    assert a / a == GaussianRational(1)


@given(gaussians)
def test_canonical_form(a):
    for q in (a.re, a.im):
        assert isinstance(q, Fraction)
        assert q.denominator > 0


@given(gaussians, gaussians)
def test_conjugation_is_a_field_automorphism(a, b):
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()
    assert (a + b).conjugate() == a.conjugate() + b.conjugate()
    assert a.conjugate().conjugate() == a


@given(gaussians)
def test_json_round_trip(a):
    assert GaussianRational.from_json(a.to_json()) == a


def test_json_is_lowest_terms():
    assert GaussianRational(Fraction(2, 4), -3).to_json() == {"re": "1/2", "im": "-3/1"}


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        GaussianRational(1) / GaussianRational(0)


def test_parse_rational():
    assert parse_rational("-6/4") == Fraction(-3, 2)
    assert parse_rational(" 7 ") == 7
    assert format_rational(Fraction(-3, 2)) == "-3/2"
    with pytest.raises(ValueError):
        parse_rational("1.5")


def test_powers():
    i = GaussianRational(0, 1)
    assert i**2 == GaussianRational(-1)
    assert i**-1 == GaussianRational(0, -1)
    assert i**0 == GaussianRational(1)
