import itertools
from fractions import Fraction

from hypothesis import given, settings

from bichar.bicharacter import BicharSpec, symmetrize
from bichar.coeffring import LaurentPoly
from bichar.hopf import HopfElement, Signature
from bichar.quadop import (
    QuadraticOperator,
    apply_exp_q,
    apply_exp_q1,
    apply_exp_q1_series,
    apply_exp_qp,
    apply_qp,
    apply_stages,
    derive_grouplike,
    derive_primitive,
    symmetrized_operator,
)
from bichar.twisting import bullet_element, bullet_product, eq_map
from oracles import naive_eq
from strategies import setups

Z = LaurentPoly.z
SIG = Signature(2, "plain")
one = HopfElement.one(SIG)
x1, x2, x5 = (HopfElement.primitive(SIG, k) for k in (1, 2, 5))


def e(*v):
    return HopfElement.grouplike(SIG, v)


def sample():
    return BicharSpec(
        SIG,
        [[2, Fraction(1, 3)], [5, 7]],
        {(0, 1): Z(-1), (1, 1): LaurentPoly.const(3)},
        {(1, 0): Fraction(1, 2), (1, 1): Z(2)},
        {(1, 2): Z(-2), (2, 1): LaurentPoly.const(0), (1, 1): LaurentPoly.const(4)},
    )


def test_derivatives():
    assert derive_primitive(1, x1 * x1) == x1 * 2
    assert derive_primitive(1, e(1, 0) * x1) == e(1, 0)
    assert derive_primitive(2, x1) == HopfElement.zero(SIG)
    assert derive_grouplike(0, e(1, 0)) == e(1, 0)
    assert derive_grouplike(1, e(1, 0)) == HopfElement.zero(SIG)
    assert derive_grouplike(0, e(3, -1) * x5) == e(3, -1) * x5 * 3
    assert derive_grouplike(0, x5) == HopfElement.zero(SIG)


def test_exp_qp_examples():
    r = sample()
    q = QuadraticOperator(r)
    assert apply_exp_qp(q, x1) == x1
    assert apply_exp_qp(q, one) == one
    assert apply_exp_qp(q, x1 * x2) == x1 * x2 + r.pp_val(1, 2) + r.pp_val(2, 1)


def test_exp_q_grouplike_examples():
    r = sample()
    q = QuadraticOperator(r)
    g = r.gg
    assert apply_exp_q(q, e(1, 0)) == e(1, 0) * g[0][0]
    assert apply_exp_q(q, e(1, 1)) == e(1, 1) * (g[0][0] * g[0][1] * g[1][0] * g[1][1])


def test_exp_q_one_shift():
    r = sample()
    q = QuadraticOperator(r)
    alpha = (2, -1)
    shift = sum((r.gp_val(i, 1) + r.pg_val(1, i)) * alpha[i] for i in range(2))
    eig = apply_exp_q(q, e(*alpha)).terms[next(iter(e(*alpha).terms))]
    assert apply_exp_q(q, e(*alpha) * x1) == (e(*alpha) * x1 + e(*alpha) * shift).scale(eig)
    assert apply_exp_q(q, e(*alpha) * x1) == eq_map(r, e(*alpha) * x1)


def test_symmetrized_operator():
    r = BicharSpec(Signature(0), None, {}, {}, {(1, 2): Z(-1)})
    q2 = symmetrized_operator(QuadraticOperator(r))
    assert q2.spec.pp_val(1, 2) == q2.spec.pp_val(2, 1) == Z(-1) / 2
    s = BicharSpec(Signature(0), None, {}, {}, {(1, 2): Z(1), (2, 1): Z(1)})
    assert symmetrized_operator(QuadraticOperator(s)).spec == s


@settings(max_examples=60, deadline=None)
@given(setups(n_elements=1, n_specs=1, max_degree=4))
def test_exp_q_equals_eq(data):
    _, (r,), (a,) = data
    q = QuadraticOperator(r)
    assert apply_exp_q(q, a) == eq_map(r, a)


@settings(max_examples=40, deadline=None)
@given(setups(n_elements=1, n_specs=1, max_degree=3))
def test_exp_q_equals_naive_eq(data):
    _, (r,), (a,) = data
    assert apply_exp_q(QuadraticOperator(r), a) == naive_eq(r, a)


@settings(max_examples=40, deadline=None)
@given(setups(n_elements=1, n_specs=1, max_degree=4))
def test_stages_commute(data):
    _, (r,), (a,) = data
    q = QuadraticOperator(r)
    outs = {apply_stages(q, a, order) for order in itertools.permutations(("q0", "q1", "qp"))}
    assert len(outs) == 1
    assert apply_exp_q1(q, a) == apply_exp_q1_series(q, a)


@settings(max_examples=40, deadline=None)
@given(setups(n_elements=2, n_specs=1, max_degree=2))
def test_exp_q_homomorphism_and_bullet_word(data):
    _, (r,), (a, b) = data
    q = QuadraticOperator(r)
    s = symmetrize(r)
    assert apply_exp_q(q, a * b) == bullet_product(s, apply_exp_q(q, a), apply_exp_q(q, b))
    for mono, c in a.items():
        assert apply_exp_q(q, HopfElement(a.sig, {mono: c})) == bullet_element(r, s, mono, c)


@settings(max_examples=40, deadline=None)
@given(setups(n_elements=1, n_specs=1, max_degree=4, max_terms=3))
def test_qp_degree_bound(data):
    _, (r,), (a,) = data
    q = QuadraticOperator(r)
    deg = max(m.degree() for m, _ in a.items())
    t = a
    for k in range(1, deg // 2 + 2):
        t = apply_qp(q, t)
        if 2 * k > deg:
            assert not t
