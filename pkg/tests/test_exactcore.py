from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from twentyv.exactcore import (
    InexactDivision, QuadRat, RingError, SQRT2, UniPoly, join_rings, lagrange_interpolate,
    parse_rat, parse_scalar, rat_str, to_str,
)

small = st.integers(min_value=-50, max_value=50)
rats = st.fractions(min_value=-20, max_value=20, max_denominator=30)
quads = st.builds(QuadRat, rats, rats)
polys = st.lists(small, max_size=7).map(UniPoly)


def test_rational_examples():
    assert Fraction(1, 2) + Fraction(1, 3) == Fraction(5, 6)
    assert Fraction(2, 4) == Fraction(1, 2) and Fraction(2, 4).denominator == 2
    assert Fraction(3, 7) / Fraction(3, 7) == 1
    with pytest.raises(ZeroDivisionError):
        Fraction(1, 2) / 0


def test_quadrat_examples():
    one = QuadRat(1)
    assert (one + SQRT2) * (one - SQRT2) == -1
    assert SQRT2 * SQRT2 == 2
    assert 1 / SQRT2 == QuadRat(0, Fraction(1, 2))
    assert (QuadRat(3, 2)).conj() == QuadRat(3, -2)
    with pytest.raises(ZeroDivisionError):
        SQRT2 / QuadRat(0)


@given(quads, quads)
def test_quadrat_product_matches_floats(a, b):
    assert abs(float(a * b) - float(a) * float(b)) < 1e-9 * (1 + abs(float(a) * float(b)))


@given(quads, quads)
def test_quadrat_division_inverts_multiplication(a, b):
    if b:
        assert (a / b) * b == a


@given(rats, rats)
def test_rationals_stay_canonical(a, b):
    for r in (a + b, a - b, a * b) + ((a / b,) if b else ()):
        assert math.gcd(r.numerator, r.denominator) == 1 and r.denominator > 0


def test_poly_examples():
    tau = UniPoly.x()
    z2 = 1 + 2 * tau + tau * tau
    assert z2.reverse(2) == z2
    assert UniPoly((3, 1)).reverse(1) == UniPoly((1, 3))
    assert z2(1) == 4
    assert UniPoly(()).degree == -1
    with pytest.raises(ValueError):
        z2.reverse(1)


@given(polys)
def test_reverse_is_involution(p):
    d = max(p.degree, 0)
    assert p.reverse(d).reverse(d) == p


@given(polys, st.integers(min_value=0, max_value=4))
def test_reverse_with_padding_is_involution(p, extra):
    d = max(p.degree, 0) + extra
    q = p.reverse(d)
    assert q.degree <= d and q.reverse(d) == p


@given(polys, polys)
def test_exact_division_recovers_factor(p, q):
    if q.degree >= 0:
        assert (p * q).exact_div(q) == p


def test_inexact_division_raises():
    with pytest.raises(InexactDivision):
        UniPoly((1, 0, 1)).exact_div(UniPoly((1, 1)))


def test_ring_tags():
    assert UniPoly((1, 2)).ring == "Int"
    assert UniPoly((Fraction(1, 2),)).ring == "Rat"
    assert UniPoly((SQRT2,)).ring == "QuadRat"
    assert join_rings("Int", "Rat") == "Rat"
    assert join_rings("Rat", "QuadRat") == "QuadRat"
    with pytest.raises(RingError):
        join_rings("UniPoly", "Int")


def test_serialization_format():
    assert rat_str(Fraction(-3, 4)) == "-3/4"
    assert rat_str(Fraction(6, 3)) == "2"
    assert to_str(QuadRat(Fraction(1, 2), -3)) == "1/2+-3*sqrt2"
    assert to_str(10 ** 40) == "1" + "0" * 40


@given(rats)
def test_rational_round_trip(r):
    assert parse_rat(rat_str(r)) == r


@given(quads)
def test_quadrat_round_trip(q):
    assert parse_scalar(to_str(q)) == q


def test_lagrange():
    p = UniPoly((3, 0, -2, 5))
    xs = [0, 1, 2, 3]
    assert lagrange_interpolate(xs, [p(x) for x in xs]) == p
    assert lagrange_interpolate([0, 2], [Fraction(1, 2), 1]) == UniPoly((Fraction(1, 2), Fraction(1, 4)))
