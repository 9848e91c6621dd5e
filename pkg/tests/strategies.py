"""Hypothesis strategies for rationals, Laurent polynomials, elements and bicharacters."""

from fractions import Fraction

from hypothesis import strategies as st

from bichar.bicharacter import BicharSpec
from bichar.coeffring import LaurentPoly
from bichar.hopf import HopfElement, Monomial, Signature

rationals = st.builds(Fraction, st.integers(-4, 4), st.integers(1, 4))
nonzero_rationals = rationals.filter(bool)
laurent = st.dictionaries(st.integers(-3, 2), nonzero_rationals, max_size=3).map(LaurentPoly)
small_laurent = st.dictionaries(st.integers(-2, 1), nonzero_rationals, min_size=1, max_size=2).map(LaurentPoly)


@st.composite
def signatures(draw, max_grouplike=2, max_prims=3):
    sig = Signature(draw(st.integers(0, max_grouplike)), "plain")
    prims = list(range(1, draw(st.integers(1, max_prims)) + 1))
    return sig, prims


@st.composite
def monomials(draw, sig, prims, max_degree=3, group_range=1):
    group = tuple(draw(st.integers(-group_range, group_range)) for _ in range(sig.num_grouplike))
    picks = draw(st.lists(st.sampled_from(prims), max_size=max_degree))
    exps: dict = {}
    for k in picks:
        exps[k] = exps.get(k, 0) + 1
    return Monomial.make(group, exps)


@st.composite
def elements(draw, sig, prims, max_terms=3, max_degree=3, group_range=1):
    terms = draw(
        st.dictionaries(
            monomials(sig, prims, max_degree, group_range), small_laurent, min_size=1, max_size=max_terms
        )
    )
    return HopfElement(sig, terms)


@st.composite
def specs(draw, sig, prims):
    ell = sig.num_grouplike
    gg = [[draw(nonzero_rationals) for _ in range(ell)] for _ in range(ell)]
    keys_gp = [(i, m) for i in range(ell) for m in prims]
    keys_pg = [(m, i) for i in range(ell) for m in prims]
    keys_pp = [(m, n) for m in prims for n in prims]
    gp = {k: draw(small_laurent) for k in keys_gp if draw(st.booleans())}
    pg = {k: draw(small_laurent) for k in keys_pg if draw(st.booleans())}
    pp = {k: draw(small_laurent) for k in keys_pp if draw(st.booleans())}
    return BicharSpec(sig, gg, gp, pg, pp)


@st.composite
def setups(draw, n_elements=1, n_specs=1, max_grouplike=2, max_prims=3, max_degree=3, max_terms=2):
    """(sig, [specs], [elements]) over a common signature."""
    sig, prims = draw(signatures(max_grouplike, max_prims))
    rs = [draw(specs(sig, prims)) for _ in range(n_specs)]
    els = [draw(elements(sig, prims, max_terms, max_degree)) for _ in range(n_elements)]
    return sig, rs, els
