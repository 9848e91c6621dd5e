import itertools
from fractions import Fraction

import pytest

from bichar.bicharacter import inverse, symmetrize
from bichar.coeffring import LaurentPoly
from bichar.errors import ModeParityMismatch, TwistedWordHasNoZeroEvaluation
from bichar.heisenberg import (
    TWISTED,
    UNTWISTED,
    FieldWord,
    apply_mode,
    commutator,
    field_state,
    fock_bicharacter,
    normal_ordered_apply,
    normal_ordered_coefficient,
    state_to_word,
    twisted_bullet_state,
    vacuum,
)
from bichar.hopf import HopfElement, Monomial
from bichar.lattice import flm_series
from bichar.twisting import eq_map

Z = LaurentPoly.z
x = {n: HopfElement.primitive(UNTWISTED, n) for n in range(1, 8)}
y = {p: HopfElement.primitive(TWISTED, p) for p in (1, 3, 5, 7, 9)}


def test_mode_action_examples():
    one = vacuum()
    assert apply_mode(-1, one) == x[1]
    assert apply_mode(1, x[1] * x[1]) == x[1] * 2
    assert apply_mode(2, x[2] * x[1]) == x[1] * 2
    assert apply_mode(0, x[3]) == HopfElement.zero(UNTWISTED)
    assert apply_mode(Fraction(-3, 2), vacuum(True), twisted=True) == y[3]
    assert apply_mode(Fraction(3, 2), y[3] * y[3], twisted=True) == y[3] * 3
    with pytest.raises(ModeParityMismatch):
        apply_mode(Fraction(1, 2), vacuum())
    with pytest.raises(ModeParityMismatch):
        apply_mode(1, vacuum(True), twisted=True)


def test_commutators():
    v = x[1] * x[1] * x[2] + x[3] * 5
    for m, n in itertools.product(range(-4, 5), repeat=2):
        want = v.scale(m) if m + n == 0 else HopfElement.zero(UNTWISTED)
        assert commutator(m, n, v) == want
    w = y[1] * y[3] + y[5] * y[5]
    halves = [Fraction(2 * k + 1, 2) for k in range(-4, 4)]
    for m, n in itertools.product(halves, repeat=2):
        want = w.scale(LaurentPoly.const(m)) if m + n == 0 else HopfElement.zero(TWISTED)
        assert commutator(m, n, w, twisted=True) == want


def test_field_state_examples():
    assert field_state(FieldWord.of([0, 0])) == x[1] * x[1]
    assert field_state(FieldWord.of([1])) == x[2]
    assert field_state(FieldWord.of([0, 1, 2])) == x[1] * x[2] * x[3]
    with pytest.raises(TwistedWordHasNoZeroEvaluation):
        field_state(FieldWord.of([0], twisted=True))


def _creation_field_oracle(orders, exponent, twisted):
    """Coefficient of z^exponent in prod_j d^dj h_+(z)/dj! applied to the vacuum.

    h_+(z) = sum_{p > 0} h_{-p} z^(p-1) and the creation modes act by
    multiplication, so the product is an ordinary polynomial product.
    """
    step = Fraction(1) if not twisted else Fraction(1, 2)
    sig = TWISTED if twisted else UNTWISTED
    mags = [Fraction(k) if not twisted else Fraction(2 * k + 1, 2) for k in range(0 if twisted else 1, 12)]
    total = HopfElement.zero(sig)
    for ps in itertools.product(mags, repeat=len(orders)):
        if sum(p - 1 - d for p, d in zip(ps, orders)) != exponent:
            continue
        term = HopfElement.one(sig)
        for p, d in zip(ps, orders):
            # d^d/d! z^(p-1) = C(p-1, d) z^(p-1-d)
            c = Fraction(1)
            for t in range(d):
                c *= (p - 1 - t) / (t + 1)
            key = int(2 * p) if twisted else int(p)
            term = term * HopfElement.primitive(sig, key).scale(LaurentPoly.const(c))
        total = total + term
    return total


@pytest.mark.parametrize("orders", [(0,), (0, 0), (1, 0), (0, 1, 2), (2, 2)])
def test_vacuum_window_matches_creation_oracle(orders):
    w = FieldWord.of(orders)
    got = normal_ordered_apply(w, vacuum(), (-2, 3))
    for e in range(-2, 4):
        want = _creation_field_oracle(orders, e, False)
        assert got.get(Fraction(e), HopfElement.zero(UNTWISTED)) == want


@pytest.mark.parametrize("orders", [(0,), (0, 0), (1, 0), (0, 1, 1)])
def test_twisted_vacuum_window_matches_creation_oracle(orders):
    w = FieldWord.of(orders, twisted=True)
    got = normal_ordered_apply(w, vacuum(True), (-3, 2))
    assert got
    offset = Fraction(len(orders), 2) % 1
    e = Fraction(-3) + offset
    while e <= 2:
        want = _creation_field_oracle(orders, e, True)
        assert got.get(e, HopfElement.zero(TWISTED)) == want
        e += 1


def test_annihilation_part_acts():
    # h(z) x1: the z^-2 coefficient is h_1 x1 = 1, the z^0 coefficient is x1^2
    w = FieldWord.of([0])
    assert normal_ordered_coefficient(w, x[1], -2) == vacuum()
    assert normal_ordered_coefficient(w, x[1], 0) == x[1] * x[1]
    # :h h: x1 at z^-2: 2 h_{-1} h_1 x1 = 2 x1
    assert normal_ordered_coefficient(FieldWord.of([0, 0]), x[1], -2) == x[1] * 2


def test_field_splits_into_creation_and_annihilation():
    # h(z) = sum_n h_n z^(-n-1): exponents >= 0 come from creation modes h_{-n},
    # negative exponents from annihilation modes h_n with n >= 0
    v = x[1] * x[2] * x[2]
    w = FieldWord.of([0])
    got = normal_ordered_apply(w, v, (-4, 3))
    for e in range(-4, 4):
        n = -e - 1
        want = apply_mode(n, v)
        assert got.get(Fraction(e), HopfElement.zero(UNTWISTED)) == want


def _monomials_with_weight(limit):
    out = []
    for k in range(1, limit + 1):
        for combo in itertools.combinations_with_replacement(range(1, limit + 1), k):
            if sum(combo) <= limit:
                out.append(combo)
    return out


@pytest.mark.parametrize("parts", _monomials_with_weight(6))
def test_field_state_round_trip(parts):
    exps = {}
    for n in parts:
        exps[n] = exps.get(n, 0) + 1
    mono = Monomial.make((), exps)
    assert field_state(state_to_word(mono)) == HopfElement(UNTWISTED, {mono: 1})


def test_twisted_bullet_examples():
    r = fock_bicharacter(flm_series(8), 4)
    one_factor = twisted_bullet_state(FieldWord.of([0], twisted=True), r)
    assert one_factor == x[1]
    two = twisted_bullet_state(FieldWord.of([0, 0], twisted=True), r)
    assert two == eq_map(inverse(r), x[1] * x[1])
    assert two == x[1] * x[1] - symmetrize(r).pp_val(1, 1)
    assert str(two) == "-1/8*z^-2 + x1^2"


@pytest.mark.parametrize(
    "orders",
    [w for k in range(1, 5) for w in itertools.combinations_with_replacement(range(4), k)],
)
def test_twisted_bullet_routes_agree(orders):
    r = fock_bicharacter(flm_series(8), 4)
    twisted_bullet_state(FieldWord.of(orders, twisted=True), r)


def test_fock_bicharacter_values():
    c = flm_series(4)
    r = fock_bicharacter(c, 2)
    assert r.pp_val(1, 1) == c[(1, 1)]
    assert r.pp_val(1, 2) == c[(1, 2)] / 2
    assert r.pp_val(2, 2) == c[(2, 2)] / 4


def test_word_validation():
    with pytest.raises(ValueError):
        FieldWord(())
    with pytest.raises(ValueError):
        FieldWord(((0, True), (0, False)))
    with pytest.raises(ValueError):
        state_to_word(Monomial.unit(0))
    with pytest.raises(ValueError):
        twisted_bullet_state(FieldWord.of([0]), fock_bicharacter(flm_series(2), 1))
