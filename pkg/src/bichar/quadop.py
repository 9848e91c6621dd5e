"""Quadratic differential operators and their exponentials.

For a bicharacter with generator values ``gg = e^a``, ``b``, ``c``, ``q`` the
operator is

    Q = sum a_ij d_ai d_aj + sum (b_im + c_mi) d_ai d_xm + sum q_mn d_xm d_xn

split as ``Q0 + Q1 + Qp``.  The three parts commute.  ``exp(Q0)`` acts on
``e^alpha`` by its eigenvalue ``prod gg_ij^(m_i m_j)`` so no logarithm of a
rational is ever taken, ``exp(Q1)`` is the shift ``x_m -> x_m + sum_i m_i (b_im + c_mi)``
and ``exp(Qp)`` is summed until the (degree-lowering) series terminates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .bicharacter import BicharSpec
from .coeffring import ONE, ZERO, LaurentPoly
from .hopf import HopfElement, Monomial, Signature


@dataclass(frozen=True, eq=False)
class QuadraticOperator:
    spec: BicharSpec

    @property
    def signature(self) -> Signature:
        return self.spec.sig


def derive_primitive(n, a: HopfElement) -> HopfElement:
    """Partial derivative in x_n; the grouplike factor is inert."""

    def d(mono: Monomial) -> HopfElement:
        exps = mono.prim_dict()
        e = exps.get(n, 0)
        if not e:
            return HopfElement.zero(a.sig)
        exps[n] = e - 1
        return HopfElement(a.sig, {Monomial.make(mono.group, exps): e})

    return a.map_monomials(d)


def derive_grouplike(i: int, a: HopfElement) -> HopfElement:
    """d/d alpha_i, 0-based ``i``: scales e^alpha P by alpha's i-th coordinate."""
    return HopfElement(a.sig, {m: c * m.group[i] for m, c in a.items() if m.group[i]})


def apply_qp(q: QuadraticOperator, a: HopfElement) -> HopfElement:
    """One application of Qp = sum q_mn d^2/dx_m dx_n."""
    total = HopfElement.zero(a.sig)
    for (m, n), v in q.spec.pp.items():
        total = total + derive_primitive(m, derive_primitive(n, a)).scale(v)
    return total


def apply_q1(q: QuadraticOperator, a: HopfElement) -> HopfElement:
    """One application of Q1 = sum_i sum_m (b_im + c_mi) d/d alpha_i d/dx_m."""
    spec = q.spec
    total = HopfElement.zero(a.sig)
    for i, m in set(spec.gp) | {(i, m) for m, i in spec.pg}:
        coeff = spec.gp_val(i, m) + spec.pg_val(m, i)
        if coeff:
            total = total + derive_grouplike(i, derive_primitive(m, a)).scale(coeff)
    return total


def _exp_series(step, a: HopfElement) -> HopfElement:
    # sum_k step^k(a)/k!, stopping once a power vanishes
    total = a
    term = a
    k = 0
    while term:
        k += 1
        term = step(term).scale(LaurentPoly.const(Fraction(1, k)))
        total = total + term
    return total


def apply_exp_qp(q: QuadraticOperator, a: HopfElement) -> HopfElement:
    """exp(Qp)(a); terminates after floor(deg/2) + 1 steps."""
    return _exp_series(lambda t: apply_qp(q, t), a)


def apply_exp_q1_series(q: QuadraticOperator, a: HopfElement) -> HopfElement:
    """exp(Q1)(a) summed as a power series (cross-check for the shift form)."""
    return _exp_series(lambda t: apply_q1(q, t), a)


def grouplike_eigenvalue(spec: BicharSpec, group: tuple) -> Fraction:
    """exp(Q0) on e^alpha: prod_ij gg_ij^(m_i m_j)."""
    value = Fraction(1)
    for i, mi in enumerate(group):
        if not mi:
            continue
        for j, mj in enumerate(group):
            if mj:
                value *= spec.gg[i][j] ** (mi * mj)
    return value


def apply_exp_q0(q: QuadraticOperator, a: HopfElement) -> HopfElement:
    return HopfElement(a.sig, {m: c * grouplike_eigenvalue(q.spec, m.group) for m, c in a.items()})


def shift_vector(spec: BicharSpec, group: tuple) -> dict:
    """m -> sum_i m_i (b_im + c_mi), the translation applied by exp(Q1) on e^alpha P."""
    out: dict = {}
    for (i, m), v in spec.gp.items():
        if group[i]:
            out[m] = out.get(m, ZERO) + v * group[i]
    for (m, i), v in spec.pg.items():
        if group[i]:
            out[m] = out.get(m, ZERO) + v * group[i]
    return {m: v for m, v in out.items() if v}


def _shift_monomial(mono: Monomial, shift: dict) -> dict:
    # expand prod (x_m + t_m)^e binomially; mono.prims is sorted, so appending keeps order
    terms = {(): ONE}
    for m, e in mono.prims:
        t = shift.get(m)
        if t is None:
            terms = {base + ((m, e),): c for base, c in terms.items()}
            continue
        nxt: dict = {}
        for base, c in terms.items():
            for k in range(e + 1):
                key = base + (((m, k),) if k else ())
                nxt[key] = c * t ** (e - k) * comb(e, k)
        terms = nxt
    return {Monomial(mono.group, prims): c for prims, c in terms.items() if c}


def apply_exp_q1(q: QuadraticOperator, a: HopfElement) -> HopfElement:
    out: dict = {}
    for mono, c in a.items():
        shift = shift_vector(q.spec, mono.group)
        if not shift:
            out[mono] = out[mono] + c if mono in out else c
            continue
        for m2, v in _shift_monomial(mono, shift).items():
            out[m2] = out[m2] + c * v if m2 in out else c * v
    return HopfElement(a.sig, out)


def apply_exp_q(q: QuadraticOperator, a: HopfElement) -> HopfElement:
    """exp(Q) = exp(Q1) exp(Qp) exp(Q0)."""
    return apply_exp_q1(q, apply_exp_qp(q, apply_exp_q0(q, a)))


STAGES = {
    "q0": apply_exp_q0,
    "q1": apply_exp_q1,
    "qp": apply_exp_qp,
}


def apply_stages(q: QuadraticOperator, a: HopfElement, order) -> HopfElement:
    """Apply the exponential stages in the given order, e.g. ``("qp", "q0", "q1")``."""
    for name in order:
        a = STAGES[name](q, a)
    return a


def symmetrized_operator(q: QuadraticOperator) -> QuadraticOperator:
    """Replace q_mn by (q_mn + q_nm)/2; exp(Qp) is unchanged."""
    spec = q.spec
    pp: dict = {}
    for (m, n), v in spec.pp.items():
        pp[(m, n)] = pp.get((m, n), ZERO) + v / 2
        pp[(n, m)] = pp.get((n, m), ZERO) + v / 2
    return QuadraticOperator(BicharSpec(spec.sig, spec.gg, spec.gp, spec.pg, pp))
