"""Rank-one Heisenberg Fock spaces and normal ordered products of fields.

Untwisted module: V0 = Q[x1, x2, ...] (plain naming), ``h_{-n}`` multiplies by
``x_n``, ``h_n = n d/dx_n`` and ``h_0`` acts as zero.

Twisted module: variables ``y_p`` for positive half-integers ``p``, keyed by the
odd integer ``2p`` (twisted naming); modes are half-integers.

Field words are lists of ``(d, twisted)`` factors standing for
``d^d h(z) / d!``.  A field is never materialised; the normal ordered word is
evaluated coefficient by coefficient of ``z`` on a fixed state.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .bicharacter import BicharSpec, inverse, symmetrize
from .coeffring import LaurentPoly
from .errors import ModeParityMismatch, TwistedWordHasNoZeroEvaluation
from .hopf import HopfElement, Monomial, Signature
from .lattice import SeriesCoefficients
from .quadop import QuadraticOperator, apply_exp_qp
from .twisting import bullet_word, eq_map

UNTWISTED = Signature(0, "plain")
TWISTED = Signature(0, "twisted")
HALF = Fraction(1, 2)


def fock_signature(twisted: bool) -> Signature:
    return TWISTED if twisted else UNTWISTED


def vacuum(twisted: bool = False) -> HopfElement:
    return HopfElement.one(fock_signature(twisted))


def _mode_key(p: Fraction, twisted: bool):
    # variable id for the positive mode magnitude p
    return int(2 * p) if twisted else int(p)


def _check_mode(n, twisted: bool) -> Fraction:
    n = Fraction(n)
    if twisted:
        if n.denominator != 2:
            raise ModeParityMismatch(f"twisted modes are half-integers, got {n}")
    elif n.denominator != 1:
        raise ModeParityMismatch(f"untwisted modes are integers, got {n}")
    return n


def _multiply_var(v: HopfElement, key) -> HopfElement:
    out = {}
    for m, c in v.items():
        out[m.times(Monomial((), ((key, 1),)))] = c
    return HopfElement(v.sig, out)


def _differentiate(v: HopfElement, key, scale: Fraction) -> HopfElement:
    out: dict = {}
    for m, c in v.items():
        exps = m.prim_dict()
        e = exps.get(key, 0)
        if not e:
            continue
        exps[key] = e - 1
        mm = Monomial.make((), exps)
        out[mm] = out[mm] + c * (e * scale) if mm in out else c * (e * scale)
    return HopfElement(v.sig, out)


def apply_mode(n, v: HopfElement, twisted: bool = False) -> HopfElement:
    """Act by ``h_n`` on a Fock state."""
    n = _check_mode(n, twisted)
    if v.sig != fock_signature(twisted):
        raise ModeParityMismatch("state does not live in the requested Fock space")
    if n < 0:
        return _multiply_var(v, _mode_key(-n, twisted))
    if n > 0:
        return _differentiate(v, _mode_key(n, twisted), n)
    return HopfElement.zero(v.sig)


def commutator(m, n, v: HopfElement, twisted: bool = False) -> HopfElement:
    return apply_mode(m, apply_mode(n, v, twisted), twisted) - apply_mode(n, apply_mode(m, v, twisted), twisted)


@dataclass(frozen=True)
class FieldWord:
    """Normal ordered word of derivative fields ``d^d h(z)/d!``."""

    factors: tuple

    def __post_init__(self):
        factors = tuple((int(d), bool(t)) for d, t in self.factors)
        if not factors:
            raise ValueError("a field word needs at least one factor")
        if len({t for _, t in factors}) != 1:
            raise ValueError("all factors of a field word share the twist flag")
        if any(d < 0 for d, _ in factors):
            raise ValueError("derivative orders are >= 0")
        object.__setattr__(self, "factors", factors)

    @classmethod
    def of(cls, orders: Iterable[int], twisted: bool = False) -> "FieldWord":
        return cls(tuple((d, twisted) for d in orders))

    @property
    def twisted(self) -> bool:
        return self.factors[0][1]

    @property
    def orders(self) -> tuple:
        return tuple(d for d, _ in self.factors)


def _falling_binom(top: Fraction, d: int) -> Fraction:
    # generalized binomial C(top, d)
    out = Fraction(1)
    for t in range(d):
        out *= (top - t) / (t + 1)
    return out


def mode_coefficient(n: Fraction, d: int) -> tuple[Fraction, Fraction]:
    """``d^d/d! z^(-n-1) = coeff * z^exp``; returns ``(coeff, exp)``."""
    top = -n - 1
    return _falling_binom(top, d), top - d


def _creation_tuples(orders: Sequence[int], target: Fraction, step: Fraction) -> Iterator[tuple]:
    """Positive magnitudes p_j (multiples of ``step``, integral or half-odd) with
    sum_j (p_j - 1 - d_j) == target.  Each summand is >= (min p) - 1 - d_j so the
    enumeration is finite."""
    if not orders:
        if target == 0:
            yield ()
        return
    d0, rest = orders[0], orders[1:]
    pmin = Fraction(1) if step == 1 else HALF
    rest_floor = sum((pmin - 1 - d for d in rest), Fraction(0))
    p = pmin
    while p - 1 - d0 + rest_floor <= target:
        for tail in _creation_tuples(rest, target - (p - 1 - d0), step):
            yield (p,) + tail
        p += 1


def _annihilate(v: HopfElement, modes: Sequence[Fraction], twisted: bool) -> HopfElement:
    for n in modes:
        v = apply_mode(n, v, twisted)
        if not v:
            break
    return v


def _create(v: HopfElement, magnitudes: Sequence[Fraction], twisted: bool) -> HopfElement:
    for p in magnitudes:
        v = apply_mode(-p, v, twisted)
    return v


def _present_modes(v: HopfElement, twisted: bool) -> list[Fraction]:
    keys = {k for m, _ in v.items() for k, _ in m.prims}
    if twisted:
        return sorted(Fraction(k, 2) for k in keys)
    return sorted(Fraction(k) for k in keys)


def normal_ordered_coefficient(w: FieldWord, v: HopfElement, exponent) -> HopfElement:
    """Coefficient of ``z^exponent`` in ``:F_1(z) ... F_k(z): v``.

    All creation modes stand left of all annihilation modes; modes of one
    kind commute.  Annihilators only need to range over variables present in
    ``v``; the creation magnitudes then have a fixed sum.
    """
    twisted = w.twisted
    sig = fock_signature(twisted)
    if v.sig != sig:
        raise ModeParityMismatch("state does not live in the requested Fock space")
    exponent = Fraction(exponent)
    orders = w.orders
    step = HALF if twisted else Fraction(1)
    present = _present_modes(v, twisted)
    total = HopfElement.zero(sig)
    k = len(orders)
    for mask in itertools.product((False, True), repeat=k):
        ann_idx = [j for j in range(k) if mask[j]]
        cre_idx = [j for j in range(k) if not mask[j]]
        for ann_modes in itertools.product(present, repeat=len(ann_idx)):
            coeff = Fraction(1)
            used = Fraction(0)
            for j, n in zip(ann_idx, ann_modes):
                cj, ej = mode_coefficient(n, orders[j])
                coeff *= cj
                used += ej
            if not coeff:
                continue
            after = _annihilate(v, ann_modes, twisted)
            if not after:
                continue
            cre_orders = [orders[j] for j in cre_idx]
            for mags in _creation_tuples(cre_orders, exponent - used, step):
                c = coeff
                for j, p in zip(cre_idx, mags):
                    cj, _ = mode_coefficient(-p, orders[j])
                    c *= cj
                if c:
                    total = total + _create(after, mags, twisted).scale(LaurentPoly.const(c))
    return total


def _window_exponents(window: tuple, twisted: bool, k: int) -> list[Fraction]:
    lo, hi = (Fraction(x) for x in window)
    # with k twisted factors exponents lie in Z + k/2
    offset = Fraction(k, 2) % 1 if twisted else Fraction(0)
    start = lo.__floor__() + offset
    if start < lo:
        start += 1
    out = []
    e = start
    while e <= hi:
        out.append(e)
        e += 1
    return out


def normal_ordered_apply(w: FieldWord, v: HopfElement, window: tuple) -> dict:
    """FieldValue: ``{exponent: state}`` for nonzero coefficients with ``lo <= exponent <= hi``."""
    out = {}
    for e in _window_exponents(window, w.twisted, len(w.factors)):
        c = normal_ordered_coefficient(w, v, e)
        if c:
            out[e] = c
    return out


def field_state(w: FieldWord) -> HopfElement:
    """State of an untwisted normal ordered word: its ``z^0`` coefficient on the vacuum."""
    if w.twisted:
        raise TwistedWordHasNoZeroEvaluation("twisted fields cannot be evaluated at z = 0")
    return normal_ordered_coefficient(w, vacuum(False), 0)


def state_to_word(mono: Monomial) -> FieldWord:
    """x_{n1} ... x_{nk} -> word with derivative orders n_i - 1."""
    orders = []
    for k, e in mono.prims:
        orders.extend([k - 1] * e)
    if not orders:
        raise ValueError("the unit state has no field word")
    return FieldWord.of(orders, False)


def fock_bicharacter(c: SeriesCoefficients, depth: int) -> BicharSpec:
    """Log-sqrt series bicharacter on V0 for a rank-one lattice with a unit-length generator.

    With ``x_n = h(-n) = alpha(-n)/n`` the primitive values are
    ``r(x_m (x) x_n) = c_mn / (m n)``.
    """
    if 2 * depth > c.order:
        raise ValueError(f"series order {c.order} too small for depth {depth}")
    pp = {}
    for m in range(1, depth + 1):
        for n in range(1, depth + 1):
            pp[(m, n)] = c[(m, n)] / (m * n)
    return BicharSpec(UNTWISTED, None, {}, {}, pp)


def twisted_bullet_state(w: FieldWord, r: BicharSpec) -> HopfElement:
    """State assigned to a twisted normal ordered word.

    ``EQ_{r^-1}(x_{n1} ... x_{nk})``, checked against the bullet word for
    ``s^-1`` and against ``exp(-Qp)``; raises AssertionError if they differ.
    """
    if not w.twisted:
        raise ValueError("twisted_bullet_state expects a twisted word")
    sig = r.sig
    gens = [HopfElement.primitive(sig, d + 1) for d in w.orders]
    mono = gens[0]
    for g in gens[1:]:
        mono = mono * g
    r_inv = inverse(r)
    via_eq = eq_map(r_inv, mono)
    via_bullet = bullet_word(gens, inverse(symmetrize(r)))
    via_exp = apply_exp_qp(QuadraticOperator(r_inv), mono)
    if not (via_eq == via_bullet == via_exp):
        raise AssertionError(f"routes disagree: {via_eq} / {via_bullet} / {via_exp}")
    return via_eq
