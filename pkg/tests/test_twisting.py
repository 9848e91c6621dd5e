import pytest
from hypothesis import given, settings

from bichar.bicharacter import BicharSpec, convolve, inverse, symmetrize
from bichar.coeffring import LaurentPoly
from bichar.errors import NotSymmetric
from bichar.hopf import HopfElement, Signature
from bichar.twisting import BulletWord, bullet_product, bullet_word, eq_map, twisted_product
from oracles import naive_eq, naive_twisted_product
from strategies import setups

Z = LaurentPoly.z
SIG = Signature(2, "plain")
one = HopfElement.one(SIG)
xm, xn, xl = (HopfElement.primitive(SIG, k) for k in (1, 2, 3))
ei = HopfElement.grouplike(SIG, (1, 0))
ej = HopfElement.grouplike(SIG, (0, 1))


def sample():
    q = {}
    for m in (1, 2, 3):
        for n in (1, 2, 3):
            q[(m, n)] = Z(-m) * (m + 2 * n) + n
    return BicharSpec(SIG, [[2, 3], [5, 7]], {(0, 1): Z(1), (1, 3): LaurentPoly.const(-2)}, {(2, 0): Z(-1)}, q)


def test_twisted_unit():
    r = sample()
    b = xm * ei + 3
    assert twisted_product(r, one, b) == b
    assert twisted_product(r, b, one) == b


def test_bullet_of_two_and_three_primitives():
    r = sample()
    s = symmetrize(r)
    q = r.pp_val
    assert twisted_product(s, xm, xn) == xm * xn + q(1, 2) + q(2, 1)
    assert bullet_product(s, xm, xn) == xm * xn + s.pp_val(1, 2)
    assert twisted_product(s, xm * xn, xl) == xm * xn * xl + xn * (q(1, 3) + q(3, 1)) + xm * (q(2, 3) + q(3, 2))
    assert bullet_word([xm, xn, xl], s) == (
        xm * xn * xl + xl * (q(1, 2) + q(2, 1)) + xn * (q(1, 3) + q(3, 1)) + xm * (q(2, 3) + q(3, 2))
    )


def test_bullet_of_grouplikes_and_unit():
    s = symmetrize(sample())
    assert bullet_product(s, ei, ej) == ei * ej * s.gg[0][1]
    assert bullet_word(BulletWord((ei, ej), s)) == ei * ej * s.gg[0][1]
    assert bullet_word([xm], s) == xm
    a = xm * ei
    assert bullet_product(s, a, one) == a


def test_bullet_needs_symmetric():
    with pytest.raises(NotSymmetric):
        bullet_product(sample(), xm, xn)


def test_eq_examples():
    r = sample()
    assert eq_map(r, xm) == xm
    assert eq_map(r, ei) == ei * 2
    assert eq_map(r, xm * xn) == xm * xn + r.pp_val(1, 2) + r.pp_val(2, 1)


@settings(max_examples=60, deadline=None)
@given(setups(n_elements=1, n_specs=1, max_degree=3))
def test_eq_matches_naive_oracle(data):
    _, (r,), (a,) = data
    assert eq_map(r, a) == naive_eq(r, a)


@settings(max_examples=40, deadline=None)
@given(setups(n_elements=2, n_specs=1, max_degree=2))
def test_twisted_product_matches_naive_oracle(data):
    _, (r,), (a, b) = data
    assert twisted_product(r, a, b) == naive_twisted_product(r, a, b)


@settings(max_examples=40, deadline=None)
@given(setups(n_elements=3, n_specs=1, max_degree=2))
def test_twisted_product_associative(data):
    _, (r,), (a, b, c) = data
    assert twisted_product(r, twisted_product(r, a, b), c) == twisted_product(r, a, twisted_product(r, b, c))


@settings(max_examples=40, deadline=None)
@given(setups(n_elements=2, n_specs=1, max_degree=2))
def test_eq_is_homomorphism(data):
    _, (r,), (a, b) = data
    s = symmetrize(r)
    assert eq_map(r, a * b) == bullet_product(s, eq_map(r, a), eq_map(r, b))
    assert bullet_product(s, a, b) == bullet_product(s, b, a)


@settings(max_examples=40, deadline=None)
@given(setups(n_elements=1, n_specs=2, max_degree=3))
def test_eq_composition_and_inverse(data):
    _, (r1, r2), (a,) = data
    assert eq_map(convolve(r1, r2), a) == eq_map(r1, eq_map(r2, a))
    assert eq_map(inverse(r1), eq_map(r1, a)) == a


@settings(max_examples=30, deadline=None)
@given(setups(n_elements=2, n_specs=2, max_degree=2))
def test_interchange(data):
    _, (r, t), (a, b) = data
    s1 = symmetrize(t)
    s2 = convolve(symmetrize(r), s1)
    assert eq_map(r, bullet_product(s1, a, b)) == bullet_product(s2, eq_map(r, a), eq_map(r, b))
