"""Bicharacters given by their values on generators.

A bicharacter ``r: V (x) V -> A`` is determined by four tables:

* ``gg[i][j] = r(e^ai (x) e^aj)`` -- nonzero rationals, stored multiplicatively
* ``gp[(i, m)] = r(e^ai (x) x_m)``
* ``pg[(m, i)] = r(x_m (x) e^ai)``
* ``pp[(m, n)] = r(x_m (x) x_n)``

Grouplike indices ``i`` are 0-based internally.  Missing gp/pg/pp entries are
zero, missing gg entries are one.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from math import isqrt
from typing import Mapping

from .coeffring import ONE, ZERO, LaurentPoly, as_fraction
from .errors import BicharError, NonConstantGrouplikeValue, NoSquareRoot, NotSymmetric, SignatureMismatch
from .hopf import HopfElement, Monomial, Signature


def _grouplike_value(v) -> Fraction:
    if isinstance(v, LaurentPoly):
        if not v.is_constant():
            raise NonConstantGrouplikeValue(
                f"grouplike-grouplike value {v} depends on z; it must be a rational constant"
            )
        v = v.constant()
    v = as_fraction(v)
    if not v:
        raise BicharError("grouplike-grouplike values must be nonzero")
    return v


def _clean_table(table: Mapping | None) -> dict:
    out = {}
    for k, v in (table or {}).items():
        v = LaurentPoly.coerce(v)
        if v:
            out[k] = v
    return out


class BicharSpec:
    """Generator-level table of a bicharacter.  Immutable once built."""

    def __init__(self, sig: Signature, gg=None, gp=None, pg=None, pp=None):
        self.sig = sig
        ell = sig.num_grouplike
        if gg is None:
            gg = [[1] * ell for _ in range(ell)]
        if len(gg) != ell or any(len(row) != ell for row in gg):
            raise SignatureMismatch(f"gg must be {ell}x{ell}")
        self.gg = tuple(tuple(_grouplike_value(v) for v in row) for row in gg)
        self.gp = _clean_table(gp)
        self.pg = _clean_table(pg)
        self.pp = _clean_table(pp)
        for i, m in self.gp:
            self._check_index(i)
            sig.check_primitive(m)
        for m, i in self.pg:
            self._check_index(i)
            sig.check_primitive(m)
        for m, n in self.pp:
            sig.check_primitive(m)
            sig.check_primitive(n)
        self._memo: dict = {}
        self._lock = threading.Lock()

    def _check_index(self, i):
        if not (isinstance(i, int) and 0 <= i < self.sig.num_grouplike):
            raise SignatureMismatch(f"grouplike index {i} out of range")

    @classmethod
    def identity(cls, sig: Signature) -> "BicharSpec":
        return cls(sig)

    # generator values

    def gp_val(self, i: int, m) -> LaurentPoly:
        return self.gp.get((i, m), ZERO)

    def pg_val(self, m, i: int) -> LaurentPoly:
        return self.pg.get((m, i), ZERO)

    def pp_val(self, m, n) -> LaurentPoly:
        return self.pp.get((m, n), ZERO)

    def primitive_ids(self) -> set:
        ids = {m for _, m in self.gp} | {m for m, _ in self.pg}
        for m, n in self.pp:
            ids.update((m, n))
        return ids

    def is_symmetric(self) -> bool:
        ell = self.sig.num_grouplike
        if any(self.gg[i][j] != self.gg[j][i] for i in range(ell) for j in range(ell)):
            return False
        keys = {(i, m) for i, m in self.gp} | {(i, m) for m, i in self.pg}
        if any(self.gp_val(i, m) != self.pg_val(m, i) for i, m in keys):
            return False
        return all(self.pp_val(n, m) == v for (m, n), v in self.pp.items())

    def __eq__(self, other) -> bool:
        if not isinstance(other, BicharSpec):
            return NotImplemented
        return (
            self.sig == other.sig
            and self.gg == other.gg
            and self.gp == other.gp
            and self.pg == other.pg
            and self.pp == other.pp
        )

    def __hash__(self):
        return hash((self.sig, self.gg, frozenset(self.gp.items()), frozenset(self.pp.items())))

    def __repr__(self):
        return f"BicharSpec(gg={self.gg}, gp={self.gp}, pg={self.pg}, pp={self.pp})"

    # evaluation

    def _group_character(self, alpha: tuple, b: Monomial) -> LaurentPoly:
        # r(e^alpha (x) .) is an algebra character since e^alpha is grouplike
        value = Fraction(1)
        for i, ai in enumerate(alpha):
            if not ai:
                continue
            for j, bj in enumerate(b.group):
                if bj:
                    value *= self.gg[i][j] ** (ai * bj)
        out = LaurentPoly.const(value)
        for n, k in b.prims:
            lin = ZERO
            for i, ai in enumerate(alpha):
                if ai:
                    lin = lin + self.gp_val(i, n) * ai
            if not lin:
                return ZERO
            out = out * lin**k
        return out

    def _primitive_on_grouplike(self, m, beta: tuple) -> LaurentPoly:
        # r(x_m (x) e^beta) = sum_i beta_i c_{m i}
        out = ZERO
        for i, bi in enumerate(beta):
            if bi:
                out = out + self.pg_val(m, i) * bi
        return out

    def evaluate_monomials(self, a: Monomial, b: Monomial) -> LaurentPoly:
        key = (a, b)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        value = self._evaluate(a, b)
        with self._lock:
            self._memo[key] = value
        return value

    def _evaluate(self, a: Monomial, b: Monomial) -> LaurentPoly:
        if not a.prims:
            return self._group_character(a.group, b)
        # peel the first primitive x_m off the left slot:
        # r(x_m a' (x) b) = sum r(x_m (x) b') r(a' (x) b''), and r(x_m (x) .) only
        # sees the parts of b' of primitive degree <= 1
        (m, e), rest = a.prims[0], a.prims[1:]
        a_rest = Monomial(a.group, (((m, e - 1),) if e > 1 else ()) + rest)
        total = ZERO
        gamma = self._primitive_on_grouplike(m, b.group)
        if gamma:
            total = total + gamma * self.evaluate_monomials(a_rest, b)
        for idx, (n, k) in enumerate(b.prims):
            q = self.pp_val(m, n)
            if not q:
                continue
            b_prims = b.prims[:idx] + (((n, k - 1),) if k > 1 else ()) + b.prims[idx + 1:]
            total = total + q * k * self.evaluate_monomials(a_rest, Monomial(b.group, b_prims))
        return total


def evaluate(r: BicharSpec, a: HopfElement, b: HopfElement) -> LaurentPoly:
    """Bilinear extension of ``r`` to elements of V."""
    if a.sig != r.sig or b.sig != r.sig:
        raise SignatureMismatch("element and bicharacter signatures differ")
    total = ZERO
    for ma, ca in a.items():
        for mb, cb in b.items():
            v = r.evaluate_monomials(ma, mb)
            if v:
                total = total + ca * cb * v
    return total


def _same_sig(r1: BicharSpec, r2: BicharSpec):
    if r1.sig != r2.sig:
        raise SignatureMismatch("bicharacters live on different signatures")


def _add_tables(t1: dict, t2: dict) -> dict:
    out = dict(t1)
    for k, v in t2.items():
        out[k] = out.get(k, ZERO) + v
    return out


def convolve(r1: BicharSpec, r2: BicharSpec) -> BicharSpec:
    """Convolution product; on generators gg multiplies and the rest adds."""
    _same_sig(r1, r2)
    ell = r1.sig.num_grouplike
    gg = [[r1.gg[i][j] * r2.gg[i][j] for j in range(ell)] for i in range(ell)]
    return BicharSpec(
        r1.sig,
        gg,
        _add_tables(r1.gp, r2.gp),
        _add_tables(r1.pg, r2.pg),
        _add_tables(r1.pp, r2.pp),
    )


def transpose(r: BicharSpec) -> BicharSpec:
    ell = r.sig.num_grouplike
    gg = [[r.gg[j][i] for j in range(ell)] for i in range(ell)]
    return BicharSpec(
        r.sig,
        gg,
        {(i, m): v for (m, i), v in r.pg.items()},
        {(m, i): v for (i, m), v in r.gp.items()},
        {(n, m): v for (m, n), v in r.pp.items()},
    )


def inverse(r: BicharSpec) -> BicharSpec:
    """Table of ``a (x) b -> r(S(a) (x) b)``."""
    gg = [[1 / v for v in row] for row in r.gg]
    return BicharSpec(
        r.sig,
        gg,
        {k: -v for k, v in r.gp.items()},
        {k: -v for k, v in r.pg.items()},
        {k: -v for k, v in r.pp.items()},
    )


def symmetrize(r: BicharSpec) -> BicharSpec:
    """``s = r o r^t``."""
    return convolve(r, transpose(r))


def rational_sqrt(q: Fraction) -> Fraction | None:
    q = as_fraction(q)
    if q < 0:
        return None
    n, d = isqrt(q.numerator), isqrt(q.denominator)
    if n * n == q.numerator and d * d == q.denominator:
        return Fraction(n, d)
    return None


def grouplike_root(s: BicharSpec) -> BicharSpec:
    """Find ``r`` with ``symmetrize(r) == s``.

    Primitive-primitive values are halved, grouplike-primitive values go to the
    gp slot, off-diagonal grouplike values sit on the (i < j) side and the
    diagonal needs an exact rational square root (positive root chosen).
    Raises :class:`NoSquareRoot` otherwise.
    """
    if not s.is_symmetric():
        raise NotSymmetric("grouplike_root needs a symmetric bicharacter")
    ell = s.sig.num_grouplike
    gg = [[Fraction(1)] * ell for _ in range(ell)]
    for i in range(ell):
        root = rational_sqrt(s.gg[i][i])
        if root is None:
            raise NoSquareRoot(i + 1)
        gg[i][i] = root
        for j in range(i + 1, ell):
            gg[i][j] = s.gg[i][j]
    return BicharSpec(
        s.sig,
        gg,
        dict(s.gp),
        {},
        {k: v / 2 for k, v in s.pp.items()},
    )


def check_symmetric(s: BicharSpec) -> None:
    if not s.is_symmetric():
        raise NotSymmetric("a bullet product needs a symmetric bicharacter")


__all__ = [
    "BicharSpec",
    "evaluate",
    "convolve",
    "transpose",
    "inverse",
    "symmetrize",
    "grouplike_root",
    "rational_sqrt",
    "check_symmetric",
]
