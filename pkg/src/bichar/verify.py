"""Seeded random generators and the property suites run by ``bichar verify``."""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .bicharacter import BicharSpec, convolve, evaluate, grouplike_root, inverse, rational_sqrt, symmetrize, transpose
from .coeffring import ONE, ZERO, LaurentPoly
from .heisenberg import (
    FieldWord,
    commutator,
    field_state,
    fock_bicharacter,
    state_to_word,
    twisted_bullet_state,
)
from .hopf import (
    HopfElement,
    Monomial,
    Signature,
    antipode,
    antipode_monomial,
    coproduct,
    coproduct2,
    counit,
    operator_coproduct,
    tensor_multiply,
)
from .lattice import flm_series
from .quadop import (
    QuadraticOperator,
    apply_exp_q,
    apply_exp_q1,
    apply_exp_q1_series,
    apply_exp_qp,
    apply_stages,
    symmetrized_operator,
)
from .twisting import bullet_element, bullet_product, eq_map, twisted_product

# generators


def random_rational(rng: random.Random, nonzero: bool = False) -> Fraction:
    while True:
        q = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
        if q or not nonzero:
            return q


def random_laurent(rng: random.Random, max_terms: int = 2, lo: int = -2, hi: int = 1) -> LaurentPoly:
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        terms[rng.randint(lo, hi)] = random_rational(rng, nonzero=True)
    return LaurentPoly(terms)


def random_spec(rng: random.Random, sig: Signature, prims, density: float = 0.6) -> BicharSpec:
    """Random bicharacter: gg nonzero rationals, other tables small Laurent polynomials."""
    ell = sig.num_grouplike
    gg = [[random_rational(rng, nonzero=True) for _ in range(ell)] for _ in range(ell)]
    gp, pg, pp = {}, {}, {}
    for i in range(ell):
        for m in prims:
            if rng.random() < density:
                gp[(i, m)] = random_laurent(rng)
            if rng.random() < density:
                pg[(m, i)] = random_laurent(rng)
    for m in prims:
        for n in prims:
            if rng.random() < density:
                pp[(m, n)] = random_laurent(rng)
    return BicharSpec(sig, gg, gp, pg, pp)


def random_monomial(rng: random.Random, sig: Signature, prims, max_degree: int = 4, group_range: int = 2) -> Monomial:
    group = tuple(rng.randint(-group_range, group_range) for _ in range(sig.num_grouplike))
    deg = rng.randint(0, max_degree)
    exps: dict = {}
    for _ in range(deg):
        k = rng.choice(prims)
        exps[k] = exps.get(k, 0) + 1
    return Monomial.make(group, exps)


def random_element(
    rng: random.Random,
    sig: Signature,
    prims,
    max_terms: int = 3,
    max_degree: int = 4,
    laurent: bool = True,
) -> HopfElement:
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        mono = random_monomial(rng, sig, prims, max_degree)
        terms[mono] = random_laurent(rng, 1) if laurent else random_rational(rng, nonzero=True)
    out = HopfElement(sig, terms)
    return out if out else HopfElement.one(sig)


def random_signature(rng: random.Random, max_grouplike: int = 2, max_prims: int = 3):
    sig = Signature(rng.randint(0, max_grouplike), "plain")
    prims = list(range(1, rng.randint(1, max_prims) + 1))
    return sig, prims


# suite plumbing


@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    failures: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures and self.cases > 0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}: {self.cases - len(self.failures)}/{self.cases} cases ({self.seconds:.2f}s)"


def _run(name: str, cases: int, seed: int, check: Callable[[random.Random, int], str | None]) -> SuiteResult:
    res = SuiteResult(name)
    rng = random.Random(f"{name}:{seed}")
    t0 = time.perf_counter()
    for k in range(cases):
        try:
            msg = check(rng, k)
        except Exception as exc:  # a crash is a failed case, not a crashed run
            msg = f"{type(exc).__name__}: {exc}"
        res.cases += 1
        if msg:
            res.failures.append(f"case {k}: {msg}")
    res.seconds = time.perf_counter() - t0
    return res


# checks


def _slot_map(t, slot, fn):
    return t.map_slot(slot, fn)


def check_hopf_axioms(rng: random.Random, _k: int = 0) -> str | None:
    sig, prims = random_signature(rng)
    a = random_element(rng, sig, prims, max_terms=4, max_degree=4)
    b = random_element(rng, sig, prims, max_terms=2, max_degree=2)
    d = coproduct(a)
    left = d.map_slot(0, lambda m: coproduct(HopfElement(sig, {m: ONE})))
    right = d.map_slot(1, lambda m: coproduct(HopfElement(sig, {m: ONE})))
    if not (left == right == coproduct2(a)):
        return f"coassociativity fails for {a}"
    if d.swap() != d:
        return f"cocommutativity fails for {a}"
    eta = lambda m: ONE if not m.prims else ZERO
    if d.contract((0,), eta) != a or d.contract((1,), eta) != a:
        return f"counit axiom fails for {a}"
    unit_part = HopfElement.one(sig, counit(a))
    s_left = d.map_slot(0, lambda m: antipode_monomial(sig, m)).multiply_slots()
    s_right = d.map_slot(1, lambda m: antipode_monomial(sig, m)).multiply_slots()
    if s_left != unit_part or s_right != unit_part:
        return f"antipode axiom fails for {a}"
    if operator_coproduct(a) != d:
        return f"operator coproduct differs for {a}"
    if coproduct(a * b) != tensor_multiply(d, coproduct(b)):
        return f"coproduct not multiplicative on {a}, {b}"
    return None


def _sweedler_pair(r1: BicharSpec, r2: BicharSpec, a: HopfElement, b: HopfElement) -> LaurentPoly:
    # sum r1(a' (x) b') r2(a'' (x) b'') straight from the coproducts
    total = ZERO
    for (a1, a2), ca in coproduct(a).items():
        for (b1, b2), cb in coproduct(b).items():
            v = r1.evaluate_monomials(a1, b1)
            if v:
                w = r2.evaluate_monomials(a2, b2)
                if w:
                    total = total + ca * cb * v * w
    return total


def check_bicharacter_laws(rng: random.Random, _k: int = 0) -> str | None:
    sig, prims = random_signature(rng)
    r = random_spec(rng, sig, prims)
    a, b, c = (random_element(rng, sig, prims, 2, 3) for _ in range(3))
    lhs = evaluate(r, a * b, c)
    rhs = ZERO
    for (c1, c2), cc in coproduct(c).items():
        rhs = rhs + cc * evaluate(r, a, HopfElement(sig, {c1: ONE})) * evaluate(r, b, HopfElement(sig, {c2: ONE}))
    if lhs != rhs:
        return "left product law fails"
    lhs = evaluate(r, a, b * c)
    rhs = ZERO
    for (a1, a2), ca in coproduct(a).items():
        rhs = rhs + ca * evaluate(r, HopfElement(sig, {a1: ONE}), b) * evaluate(r, HopfElement(sig, {a2: ONE}), c)
    if lhs != rhs:
        return "right product law fails"
    one = HopfElement.one(sig)
    if evaluate(r, one, a) != counit(a) or evaluate(r, a, one) != counit(a):
        return "unit law fails"
    return None


def check_convolution(rng: random.Random, _k: int = 0) -> str | None:
    sig, prims = random_signature(rng)
    r1, r2, r3 = (random_spec(rng, sig, prims) for _ in range(3))
    a, b = (random_element(rng, sig, prims, 2, 3) for _ in range(2))
    conv = convolve(r1, r2)
    if evaluate(conv, a, b) != _sweedler_pair(r1, r2, a, b):
        return "generator-table convolution disagrees with the Sweedler definition"
    if conv != convolve(r2, r1):
        return "convolution not commutative"
    if convolve(conv, r3) != convolve(r1, convolve(r2, r3)):
        return "convolution not associative"
    eps = BicharSpec.identity(sig)
    if convolve(eps, r1) != r1 or convolve(r1, eps) != r1:
        return "identity bicharacter is not a unit"
    if convolve(r1, inverse(r1)) != eps or convolve(inverse(r1), r1) != eps:
        return "inverse is not a two-sided inverse"
    # inverse table agrees with r(S(a) (x) b)
    if evaluate(inverse(r1), a, b) != evaluate(r1, antipode(a), b):
        return "inverse table disagrees with r(S(a) (x) b)"
    if evaluate(transpose(r1), a, b) != evaluate(r1, b, a):
        return "transpose disagrees with swapped evaluation"
    if transpose(transpose(r1)) != r1:
        return "transpose is not an involution"
    s = symmetrize(r1)
    if evaluate(s, a, b) != evaluate(s, b, a):
        return "symmetrization is not symmetric"
    ok_diag = all(rational_sqrt(s.gg[i][i]) is not None for i in range(sig.num_grouplike))
    if ok_diag:
        if symmetrize(grouplike_root(s)) != s:
            return "grouplike_root does not re-symmetrize"
    return None


def check_twisted_product(rng: random.Random, _k: int = 0) -> str | None:
    sig, prims = random_signature(rng)
    r = random_spec(rng, sig, prims)
    a, b, c = (random_element(rng, sig, prims, 2, 2) for _ in range(3))
    if twisted_product(r, twisted_product(r, a, b), c) != twisted_product(r, a, twisted_product(r, b, c)):
        return "twisted product not associative"
    one = HopfElement.one(sig)
    if twisted_product(r, one, a) != a or twisted_product(r, a, one) != a:
        return "twisted product not unital"
    s = symmetrize(r)
    if bullet_product(s, a, b) != bullet_product(s, b, a):
        return "bullet product not commutative"
    return None


def check_eq_homomorphism(rng: random.Random, _k: int = 0) -> str | None:
    sig, prims = random_signature(rng)
    r = random_spec(rng, sig, prims)
    a, b = (random_element(rng, sig, prims, 2, 2) for _ in range(2))
    s = symmetrize(r)
    if eq_map(r, a * b) != bullet_product(s, eq_map(r, a), eq_map(r, b)):
        return f"EQ(ab) != EQ(a).EQ(b) for a={a}, b={b}"
    return None


def check_eq_composition(rng: random.Random, _k: int = 0) -> str | None:
    sig, prims = random_signature(rng)
    r1, r2 = (random_spec(rng, sig, prims) for _ in range(2))
    a = random_element(rng, sig, prims, 3, 4)
    if eq_map(convolve(r1, r2), a) != eq_map(r1, eq_map(r2, a)):
        return f"EQ_(r1 o r2) != EQ_r1 EQ_r2 on {a}"
    return None


def check_eq_inverse(rng: random.Random, _k: int = 0) -> str | None:
    sig, prims = random_signature(rng)
    r = random_spec(rng, sig, prims)
    a = random_element(rng, sig, prims, 3, 4)
    if eq_map(inverse(r), eq_map(r, a)) != a or eq_map(r, eq_map(inverse(r), a)) != a:
        return f"EQ_(r^-1) is not inverse to EQ_r on {a}"
    return None


def check_eq_interchange(rng: random.Random, _k: int = 0) -> str | None:
    sig, prims = random_signature(rng)
    r = random_spec(rng, sig, prims)
    s1 = symmetrize(random_spec(rng, sig, prims))
    a, b = (random_element(rng, sig, prims, 2, 2) for _ in range(2))
    s2 = convolve(symmetrize(r), s1)
    if eq_map(r, bullet_product(s1, a, b)) != bullet_product(s2, eq_map(r, a), eq_map(r, b)):
        return "interchange theorem fails"
    return None


def check_oracle_equivalence(rng: random.Random, _k: int = 0) -> str | None:
    sig, prims = random_signature(rng)
    r = random_spec(rng, sig, prims)
    a = random_element(rng, sig, prims, 3, 4)
    lhs = apply_exp_q(QuadraticOperator(r), a)
    rhs = eq_map(r, a)
    if lhs != rhs:
        return f"exp(Q)(a) != EQ_r(a) for a={a}: {lhs} vs {rhs}"
    return None


def check_operator_structure(rng: random.Random, _k: int = 0) -> str | None:
    sig, prims = random_signature(rng)
    r = random_spec(rng, sig, prims)
    q = QuadraticOperator(r)
    s = symmetrize(r)
    a = random_element(rng, sig, prims, 3, 4)
    b = random_element(rng, sig, prims, 2, 2)
    results = {apply_stages(q, a, order) for order in itertools.permutations(("q0", "q1", "qp"))}
    if len(results) != 1:
        return "exp(Q0), exp(Q1), exp(Qp) do not commute"
    if apply_exp_q1(q, a) != apply_exp_q1_series(q, a):
        return "shift form of exp(Q1) disagrees with its power series"
    if apply_exp_q(q, a * b) != bullet_product(s, apply_exp_q(q, a), apply_exp_q(q, b)):
        return "exp(Q) is not a homomorphism to the bullet product"
    mono = random_monomial(rng, sig, prims, 4)
    if apply_exp_q(q, HopfElement(sig, {mono: ONE})) != bullet_element(r, s, mono):
        return f"exp(Q) != bullet word on {mono}"
    return None


def check_symmetrization_dependence(rng: random.Random, _k: int = 0) -> str | None:
    sig = Signature(0, "plain")
    prims = list(range(1, rng.randint(1, 3) + 1))
    r = random_spec(rng, sig, prims, density=0.7)
    # r' = r o t with t antisymmetric on primitives has the same symmetrization
    t = {}
    for i, m in enumerate(prims):
        for n in prims[i + 1:]:
            v = random_laurent(rng)
            t[(m, n)] = v
            t[(n, m)] = -v
    pp = dict(r.pp)
    for k, v in t.items():
        pp[k] = pp.get(k, ZERO) + v
    r2 = BicharSpec(sig, None, {}, {}, pp)
    if symmetrize(r2) != symmetrize(r):
        return "construction error: symmetrizations differ"
    a = random_element(rng, sig, prims, 3, 4)
    q1, q2 = QuadraticOperator(r), QuadraticOperator(r2)
    if apply_exp_qp(q1, a) != apply_exp_qp(q2, a):
        return f"exp(Qp) depends on more than the symmetrization for {a}"
    if apply_exp_qp(symmetrized_operator(q1), a) != apply_exp_qp(q1, a):
        return "symmetrized operator changes exp(Qp)"
    return None


def _monomials_up_to(total: int):
    # multisets of positive integers with sum <= total
    def rec(remaining, smallest):
        yield ()
        for n in range(smallest, remaining + 1):
            for tail in rec(remaining - n, n):
                yield (n,) + tail

    return [m for m in rec(total, 1) if m]


def heisenberg_checks() -> list[tuple[str, str | None]]:
    """Deterministic Fock-space checks: (label, failure message or None)."""
    out = []
    sig = Signature(0, "plain")
    for parts in _monomials_up_to(6):
        exps: dict = {}
        for n in parts:
            exps[n] = exps.get(n, 0) + 1
        mono = Monomial.make((), exps)
        state = HopfElement(sig, {mono: ONE})
        got = field_state(state_to_word(mono))
        out.append((f"field_state {parts}", None if got == state else f"got {got}"))
    probe_u = HopfElement(sig, {Monomial.make((), {1: 2, 2: 1}): ONE, Monomial.make((), {3: 1, 4: 1}): LaurentPoly.const(2)})
    tsig = Signature(0, "twisted")
    probe_t = HopfElement(tsig, {Monomial.make((), {1: 2, 3: 1}): ONE, Monomial.make((), {5: 1, 7: 1}): LaurentPoly.const(3)})
    for m in range(-4, 5):
        for n in range(-4, 5):
            expect = probe_u.scale(m) if m + n == 0 else HopfElement.zero(sig)
            got = commutator(m, n, probe_u)
            out.append((f"[h{m},h{n}]", None if got == expect else f"got {got}"))
    halves = [Fraction(2 * k + 1, 2) for k in range(-4, 4)]
    for m in halves:
        for n in halves:
            expect = probe_t.scale(LaurentPoly.const(m)) if m + n == 0 else HopfElement.zero(tsig)
            got = commutator(m, n, probe_t, twisted=True)
            out.append((f"[h{m},h{n}] twisted", None if got == expect else f"got {got}"))
    r = fock_bicharacter(flm_series(8), 4)
    for length in range(1, 5):
        for orders in itertools.combinations_with_replacement(range(4), length):
            try:
                twisted_bullet_state(FieldWord.of(orders, True), r)
                out.append((f"twisted word {orders}", None))
            except AssertionError as exc:
                out.append((f"twisted word {orders}", str(exc)))
    return out


SUITES = {
    "hopf-axioms": check_hopf_axioms,
    "bicharacter-laws": check_bicharacter_laws,
    "convolution-group": check_convolution,
    "twisted-product": check_twisted_product,
    "eq-homomorphism": check_eq_homomorphism,
    "eq-composition": check_eq_composition,
    "eq-inverse": check_eq_inverse,
    "eq-interchange": check_eq_interchange,
    "expq-equals-eq": check_oracle_equivalence,
    "operator-structure": check_operator_structure,
    "symmetrization-dependence": check_symmetrization_dependence,
}


def run_suite(name: str, cases: int, seed: int) -> SuiteResult:
    return _run(name, cases, seed, SUITES[name])


def run_heisenberg() -> SuiteResult:
    res = SuiteResult("heisenberg")
    t0 = time.perf_counter()
    for label, msg in heisenberg_checks():
        res.cases += 1
        if msg:
            res.failures.append(f"{label}: {msg}")
    res.seconds = time.perf_counter() - t0
    return res


def run_all(seed: int = 0, cases: int = 200, names=None) -> list[SuiteResult]:
    names = list(names) if names else list(SUITES)
    results = [run_suite(n, cases, seed) for n in names if n in SUITES]
    if not names or "heisenberg" in names or names == list(SUITES):
        results.append(run_heisenberg())
    return results
