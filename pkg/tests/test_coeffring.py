from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bichar.coeffring import (
    BivariateSeries,
    LaurentPoly,
    series_exp,
    series_log,
    series_sqrt,
)
from bichar.errors import NonUnitConstantTerm
from strategies import laurent, nonzero_rationals, rationals, small_laurent

Z = LaurentPoly.z


def test_zero_terms_dropped():
    p = LaurentPoly({0: 0, 2: Fraction(1, 3), -1: 0})
    assert p.terms == {2: Fraction(1, 3)}
    assert not LaurentPoly({5: 0})


def test_render_descending_exponents():
    p = LaurentPoly({-1: Fraction(-1, 4), -2: Fraction(3, 32)})
    assert str(p) == "-1/4*z^-1 + 3/32*z^-2"
    assert str(LaurentPoly({1: 1, 0: -2})) == "z - 2"
    assert str(LaurentPoly()) == "0"


def test_json_round_trip():
    p = LaurentPoly({-3: Fraction(5, 96), 0: 7})
    assert p.to_json() == [[0, 7, 1], [-3, 5, 96]]
    assert LaurentPoly.from_json(p.to_json()) == p


def test_monomial_inverse():
    assert Z(2) ** -1 == Z(-2)
    assert (Z(-1) * 4) ** -2 == Z(2) / 16
    with pytest.raises(ZeroDivisionError):
        (Z(1) + 1) ** -1


def test_constant_coercion():
    assert LaurentPoly.const(3) == 3
    assert LaurentPoly.coerce(Fraction(1, 2)).constant() == Fraction(1, 2)
    assert (Z(1) + 1).is_constant() is False


wide_laurent = st.dictionaries(st.integers(-6, 6), nonzero_rationals, max_size=8).map(LaurentPoly)


@given(wide_laurent, wide_laurent, wide_laurent)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == LaurentPoly()
    assert a * 1 == a


@given(laurent, st.integers(0, 4))
def test_pow_matches_repeated_product(a, n):
    out = LaurentPoly.const(1)
    for _ in range(n):
        out = out * a
    assert a**n == out


@given(laurent, nonzero_rationals)
def test_scalar_division(a, q):
    assert (a / q) * q == a


def _series(order, pairs):
    return BivariateSeries(order, {k: LaurentPoly.coerce(v) for k, v in pairs.items()})


def test_sqrt_of_one_plus_x():
    n = 4
    s = series_sqrt(BivariateSeries.one(n) + BivariateSeries.x(n))
    assert s[(1, 0)] == Fraction(1, 2)
    assert s[(2, 0)] == Fraction(-1, 8)
    assert s[(3, 0)] == Fraction(1, 16)
    assert s[(4, 0)] == Fraction(-5, 128)


@settings(max_examples=40, deadline=None)
@given(st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3)).filter(lambda k: 0 < sum(k) <= 3), rationals, max_size=4))
def test_sqrt_squares_back(pairs):
    s = BivariateSeries.one(3) + _series(3, pairs)
    r = series_sqrt(s)
    assert r * r == s


@settings(max_examples=40, deadline=None)
@given(st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3)).filter(lambda k: 0 < sum(k) <= 3), rationals, max_size=4))
def test_exp_log_inverse(pairs):
    u = _series(3, pairs)
    assert series_log(series_exp(u)) == u
    one_plus = BivariateSeries.one(3) + u
    assert series_exp(series_log(one_plus)) == one_plus


@st.composite
def unit_series(draw):
    order = draw(st.integers(1, 8))
    keys = st.tuples(st.integers(0, order), st.integers(0, order)).filter(lambda k: 0 < sum(k) <= order)
    pairs = draw(st.dictionaries(keys, small_laurent, max_size=3))
    return BivariateSeries.one(order) + BivariateSeries(order, pairs)


@settings(max_examples=25, deadline=None)
@given(unit_series())
def test_sqrt_squares_back_up_to_order_eight(s):
    r = series_sqrt(s)
    assert r * r == s


@settings(max_examples=25, deadline=None)
@given(unit_series().flatmap(lambda s: unit_series().map(lambda t: (s, t))))
def test_log_of_product_random(st_pair):
    s, t = st_pair
    n = min(s.order, t.order)
    s, t = BivariateSeries(n, dict(s.items())), BivariateSeries(n, dict(t.items()))
    assert series_log(s * t) == series_log(s) + series_log(t)


def test_non_unit_constant_term_rejected():
    with pytest.raises(NonUnitConstantTerm):
        series_sqrt(BivariateSeries.one(2) * 2)
    with pytest.raises(NonUnitConstantTerm):
        series_log(BivariateSeries.x(2))


def test_log_of_product_is_sum():
    n = 3
    a = BivariateSeries.one(n) + BivariateSeries.x(n) * Z(-1)
    b = BivariateSeries.one(n) + BivariateSeries.y(n) * Fraction(1, 2)
    assert series_log(a * b) == series_log(a) + series_log(b)
