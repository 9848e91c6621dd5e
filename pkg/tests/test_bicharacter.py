from fractions import Fraction

import pytest
from hypothesis import given, settings

from bichar.bicharacter import (
    BicharSpec,
    convolve,
    evaluate,
    grouplike_root,
    inverse,
    rational_sqrt,
    symmetrize,
    transpose,
)
from bichar.coeffring import LaurentPoly
from bichar.errors import NonConstantGrouplikeValue, NoSquareRoot, NotSymmetric
from bichar.hopf import HopfElement, Signature, antipode, coproduct, counit
from oracles import naive_convolution_value, naive_evaluate
from strategies import setups

Z = LaurentPoly.z
SIG = Signature(1, "plain")
one = HopfElement.one(SIG)
x1 = HopfElement.primitive(SIG, 1)
x2 = HopfElement.primitive(SIG, 2)
e1 = HopfElement.grouplike(SIG, (1,))


def sample():
    return BicharSpec(
        SIG,
        [[3]],
        {(0, 1): Z(-1) / 4},
        {(2, 0): Fraction(1, 2)},
        {(1, 1): Z(-2) / 16, (1, 2): Z(1), (2, 1): LaurentPoly.const(5)},
    )


def test_power_of_variables():
    r = sample()
    q = r.pp_val(1, 1)
    for s in range(4):
        for t in range(4):
            want = q**s * [1, 1, 2, 6][s] if s == t else LaurentPoly()
            assert evaluate(r, x1**s if s else one, x1**t if t else one) == want


def test_unit_law_and_simple_values():
    r = sample()
    a = x1 * x2 + e1 * 3
    assert evaluate(r, one, a) == counit(a)
    assert evaluate(r, e1 * x1, x2) == r.pp_val(1, 2)
    assert evaluate(r, e1, e1) == 3
    assert evaluate(r, e1, x1) == Z(-1) / 4
    assert evaluate(r, x2, e1) == Fraction(1, 2)
    assert evaluate(r, HopfElement.grouplike(SIG, (-1,)), x1) == -Z(-1) / 4


def test_group_operations_examples():
    r = sample()
    eps = BicharSpec.identity(SIG)
    assert convolve(eps, r) == r
    assert convolve(r, inverse(r)) == eps
    assert convolve(inverse(r), r) == eps
    assert transpose(transpose(r)) == r
    assert transpose(eps) == eps
    assert inverse(eps) == eps
    assert symmetrize(eps) == eps
    assert transpose(r).pp_val(2, 1) == r.pp_val(1, 2)
    assert inverse(r).pp_val(1, 2) == -r.pp_val(1, 2)
    r2 = BicharSpec(SIG, [[2]], {}, {}, {(1, 2): LaurentPoly.const(7)})
    assert convolve(r, r2).pp_val(1, 2) == r.pp_val(1, 2) + 7
    assert convolve(r, r2).gg == ((Fraction(6),),)


def test_grouplike_root_examples():
    s = BicharSpec(SIG, [[4]])
    assert grouplike_root(s).gg == ((Fraction(2),),)
    with pytest.raises(NoSquareRoot) as info:
        grouplike_root(BicharSpec(SIG, [[2]]))
    assert str(info.value) == "NoSquareRoot(1)"
    with pytest.raises(NoSquareRoot, match=r"NoSquareRoot\(2\)"):
        grouplike_root(BicharSpec(Signature(2), [[4, 3], [3, 3]]))
    with pytest.raises(NotSymmetric):
        grouplike_root(sample())
    with pytest.raises(NonConstantGrouplikeValue):
        BicharSpec(SIG, [[LaurentPoly({0: 1, -1: 1})]])


def test_rational_sqrt():
    assert rational_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert rational_sqrt(Fraction(2)) is None
    assert rational_sqrt(Fraction(-4)) is None


@settings(max_examples=60, deadline=None)
@given(setups(n_elements=2, n_specs=1, max_degree=3))
def test_evaluate_matches_naive_oracle(data):
    _, (r,), (a, b) = data
    assert evaluate(r, a, b) == naive_evaluate(r, a, b)


@settings(max_examples=40, deadline=None)
@given(setups(n_elements=3, n_specs=1, max_degree=2))
def test_bicharacter_laws(data):
    sig, (r,), (a, b, c) = data
    lhs = evaluate(r, a * b, c)
    rhs = LaurentPoly()
    for (c1, c2), k in coproduct(c).items():
        rhs = rhs + k * evaluate(r, a, HopfElement(sig, {c1: 1})) * evaluate(r, b, HopfElement(sig, {c2: 1}))
    assert lhs == rhs


@settings(max_examples=40, deadline=None)
@given(setups(n_elements=2, n_specs=2, max_degree=2))
def test_convolution_table_matches_sweedler(data):
    _, (r1, r2), (a, b) = data
    assert evaluate(convolve(r1, r2), a, b) == naive_convolution_value(r1, r2, a, b)


@settings(max_examples=40, deadline=None)
@given(setups(n_elements=2, n_specs=1, max_degree=3))
def test_inverse_transpose_symmetrize(data):
    _, (r,), (a, b) = data
    assert evaluate(inverse(r), a, b) == evaluate(r, antipode(a), b)
    assert evaluate(transpose(r), a, b) == evaluate(r, b, a)
    s = symmetrize(r)
    assert s.is_symmetric()
    assert evaluate(s, a, b) == evaluate(s, b, a)


@settings(max_examples=60, deadline=None)
@given(setups(n_elements=0, n_specs=1))
def test_root_resymmetrizes(data):
    _, (r,), _ = data
    # diagonals of r o r^t are squares, so a root always exists
    s = symmetrize(r)
    assert symmetrize(grouplike_root(s)) == s
