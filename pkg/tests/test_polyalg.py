from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ricci_orbit import Poly, RatFunc, as_fraction, format_fraction

from conftest import random_poly


def test_construction_trims_trailing_zeros():
    assert Poly((1, 2, 0, 0)).coeffs == (Fraction(1), Fraction(2))
    assert Poly((0, 0)).is_zero
    assert Poly().degree == -1


def test_arithmetic_basics():
    p = Poly((1, 1))
    assert p + p == Poly((2, 2))
    assert p * p == Poly((1, 2, 1))
    assert p**3 == Poly((1, 3, 3, 1))
    assert (p - p).is_zero
    assert p * 0 == Poly()
    assert 3 * p == Poly((3, 3))


def test_evaluation_and_derivative():
    # derivative of 1 + a*x + x^2 at a = 2 is the term-by-term rule
    p = Poly((1, 2, 1))
    assert p.derivative() == Poly((2, 2))
    assert p(Fraction(1, 2)) == Fraction(9, 4)


def test_divrem_hand_example():
    # long division by hand: x^3 + 1 = (x + 1)(x^2 - x + 1)
    q, r = Poly((1, 0, 0, 1)).divrem(Poly((1, 1)))
    assert q == Poly((1, -1, 1))
    assert r.is_zero


def test_divrem_with_remainder():
    q, r = Poly((1, 0, 1)).divrem(Poly((1, 1)))
    assert Poly((1, 1)) * q + r == Poly((1, 0, 1))
    assert r.degree < 1


def test_divrem_by_zero_raises():
    with pytest.raises(ZeroDivisionError):
        Poly((1,)).divrem(Poly())


def test_gcd_is_monic():
    p = Poly((1, 1)) ** 2
    q = Poly((1, 1)) ** 3
    assert p.gcd(q) == Poly((1, 1)) ** 2
    p2 = (Poly((2, 2))) ** 2  # content does not leak into the gcd
    assert p2.gcd(q) == Poly((1, 1)) ** 2
    assert Poly((2, 2)).gcd(Poly((0, 0, 4))).lc == 1


def test_compose_linear():
    p = Poly((1, 2, 1))  # (1+x)^2
    assert p.compose_linear(0, Fraction(1, 2)) == Poly((1, 1, Fraction(1, 4)))
    assert p.compose_linear(1, 1) == Poly((4, 4, 1))  # (2+x)^2


def test_content_and_primitive():
    p = Poly((Fraction(2, 3), Fraction(4, 3)))
    assert p.content() == Fraction(2, 3)
    assert p.primitive_part() == Poly((1, 2))
    assert (-p).primitive_part() == Poly((-1, -2))


def test_squarefree_part():
    p = Poly((1, 1)) ** 3 * Poly((-3, 1))
    sf = p.squarefree_part()
    assert sf.gcd(sf.derivative()).degree == 0
    assert sf % Poly((1, 1)) == Poly() and sf % Poly((-3, 1)) == Poly()


def test_ratfunc_reduce_examples():
    # common factors cancel
    assert RatFunc(Poly((2, 2)), Poly((1, 1))) == RatFunc(Poly((2,)))
    # (1+x)^6 * 8 / (4 (1+x)^8) -> 2/(1+x)^2
    num = Poly((1, 1)) ** 6 * 8
    den = Poly((1, 1)) ** 8 * 4
    reduced = RatFunc(num, den)
    assert reduced == RatFunc(Poly((2,)), Poly((1, 1)) ** 2)
    # (x^2 - 1)/(x - 1) -> x + 1
    assert RatFunc(Poly((-1, 0, 1)), Poly((-1, 1))) == RatFunc(Poly((1, 1)))


def test_ratfunc_canonical_form():
    r = RatFunc(Poly((3,)), Poly((0, 6)))
    assert r.den.lc == 1 and r.num == Poly((Fraction(1, 2),))
    with pytest.raises(ZeroDivisionError):
        RatFunc(Poly((1,)), Poly())


def test_ratfunc_arithmetic():
    half = RatFunc(Poly((1,)), Poly((2,)))
    third = RatFunc(Poly((1,)), Poly((3,)))
    assert (half + third).constant_value == Fraction(5, 6)
    fs = RatFunc(Poly((1,)), Poly((1, 1)) ** 2)
    assert (fs * RatFunc(Poly((1, 1)))) == RatFunc(Poly((1,)), Poly((1, 1)))
    assert (fs / fs).constant_value == 1


def test_serialization_round_trip():
    r = RatFunc(Poly((1, Fraction(3, 2))), Poly((2, 0, 1)))
    data = r.to_json()
    assert data == {"num": ["1", "3/2"], "den": ["2", "0", "1"]}
    assert RatFunc.from_json(data) == r
    assert format_fraction(Fraction(3, 2)) == "3/2"
    assert format_fraction(Fraction(4, 2)) == "2"
    assert as_fraction("1e-4") == Fraction(1, 10000)


def test_reverse():
    p = Poly((0, 2, 1))
    assert p.reverse() == Poly((1, 2))  # x^2 * p(1/x), trailing zero trimmed


@st.composite
def polys(draw, max_degree=6, nonzero=False):
    coeffs = draw(
        st.lists(
            st.fractions(min_value=-9, max_value=9, max_denominator=5),
            min_size=0,
            max_size=max_degree + 1,
        )
    )
    p = Poly(coeffs)
    if nonzero and p.is_zero:
        p = Poly((1,)) + p
    return p


@settings(max_examples=200, deadline=None)
@given(polys(), polys(nonzero=True))
def test_divrem_round_trip(a, b):
    q, r = a.divrem(b)
    assert b * q + r == a
    assert r.is_zero or r.degree < b.degree


@settings(max_examples=120, deadline=None)
@given(polys(nonzero=True), polys(nonzero=True))
def test_ratfunc_reduce_idempotent(num, den):
    once = RatFunc(num, den)
    again = RatFunc(once.num, once.den)
    assert once == again
    assert once.num.gcd(once.den).degree == 0


@settings(max_examples=100, deadline=None)
@given(
    polys(),
    st.fractions(min_value=-4, max_value=4, max_denominator=3),
    st.fractions(min_value=-4, max_value=4, max_denominator=3),
    st.fractions(min_value=-4, max_value=4, max_denominator=3),
)
def test_compose_linear_agrees_with_evaluation(p, a0, a1, x):
    assert p.compose_linear(a0, a1)(x) == p(a0 + a1 * x)


def test_random_poly_ring_axioms(rng):
    for _ in range(50):
        a, b, c = (random_poly(rng) for _ in range(3))
        assert a * (b + c) == a * b + a * c
        assert (a * b) * c == a * (b * c)
