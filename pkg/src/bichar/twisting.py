"""Twisted products, bullet products and the EQ map."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .bicharacter import BicharSpec, check_symmetric
from .coeffring import LaurentPoly
from .errors import SignatureMismatch
from .hopf import HopfElement, Monomial, split_monomial


def _check(r: BicharSpec, *elements: HopfElement) -> None:
    for e in elements:
        if e.sig != r.sig:
            raise SignatureMismatch("element and bicharacter signatures differ")


def twisted_product(r: BicharSpec, a: HopfElement, b: HopfElement) -> HopfElement:
    """m_r(a (x) b) = sum a' b' r(a'' (x) b'')."""
    _check(r, a, b)
    out: dict = {}
    for ma, ca in a.items():
        splits_a = list(split_monomial(ma, 2))
        for mb, cb in b.items():
            c = ca * cb
            for (a1, a2), ka in splits_a:
                for (b1, b2), kb in split_monomial(mb, 2):
                    val = r.evaluate_monomials(a2, b2)
                    if not val:
                        continue
                    m = a1.times(b1)
                    w = c * val * (ka * kb)
                    out[m] = out[m] + w if m in out else w
    return HopfElement(a.sig, out)


def bullet_product(s: BicharSpec, a: HopfElement, b: HopfElement) -> HopfElement:
    """a . b twisted by a symmetric bicharacter ``s``; commutative."""
    check_symmetric(s)
    return twisted_product(s, a, b)


@dataclass(frozen=True)
class BulletWord:
    factors: tuple
    bichar: BicharSpec

    def __post_init__(self):
        if not self.factors:
            raise ValueError("a bullet word needs at least one factor")


def bullet_word(w: BulletWord | Sequence[HopfElement], s: BicharSpec | None = None) -> HopfElement:
    """Left fold of bullet products over the factors."""
    if not isinstance(w, BulletWord):
        w = BulletWord(tuple(w), s)
    check_symmetric(w.bichar)
    acc = w.factors[0]
    for f in w.factors[1:]:
        acc = twisted_product(w.bichar, acc, f)
    return acc


def eq_map_monomial(r: BicharSpec, mono: Monomial) -> dict:
    out: dict = {}
    for (m1, m2, m3), k in split_monomial(mono, 3):
        val = r.evaluate_monomials(m1, m2)
        if val:
            w = val * k
            out[m3] = out[m3] + w if m3 in out else w
    return out


def eq_map(r: BicharSpec, a: HopfElement) -> HopfElement:
    """EQ_r(m) = r(m' (x) m'') m''' summed over the double coproduct."""
    _check(r, a)
    out: dict = {}
    for mono, c in a.items():
        for m3, v in eq_map_monomial(r, mono).items():
            w = c * v
            out[m3] = out[m3] + w if m3 in out else w
    return HopfElement(a.sig, out)


def grouplike_bullet(r: BicharSpec, group: tuple) -> HopfElement:
    """(e^alpha)^. = e^alpha r(e^alpha (x) e^alpha)."""
    mono = Monomial(tuple(group), ())
    return HopfElement(r.sig, {mono: r.evaluate_monomials(mono, mono)})


def bullet_element(r: BicharSpec, s: BicharSpec, mono: Monomial, coeff=1) -> HopfElement:
    """a^. for a monomial a = e^alpha x_{n1} ... x_{nk}: (e^alpha)^. . x_{n1} . ... . x_{nk}."""
    factors = [grouplike_bullet(r, mono.group)]
    for k, e in mono.prims:
        factors.extend([HopfElement.primitive(r.sig, k)] * e)
    return bullet_word(factors, s).scale(LaurentPoly.coerce(coeff))
