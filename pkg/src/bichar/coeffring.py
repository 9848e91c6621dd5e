"""Exact coefficient arithmetic.

Scalars are :class:`fractions.Fraction`.  The coefficient algebra is the ring
of Laurent polynomials in one formal variable ``z`` with rational
coefficients; a rational is just a constant Laurent polynomial.  Truncated
bivariate power series in ``(x, y)`` over that ring carry the square root and
logarithm needed for the log-sqrt generating function.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

from .errors import NonUnitConstantTerm

Scalar = Union[int, Fraction]


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"not an exact rational: {value!r}")


def _fmt_fraction(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class LaurentPoly:
    """Sparse Laurent polynomial in ``z`` over the rationals.

    Instances are immutable and hashable.  No zero coefficient is ever
    stored, so structural equality is mathematical equality.

    >>> z = LaurentPoly.z()
    >>> str((1 + z) * (1 - z))
    '-z^2 + 1'
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, Scalar] | None = None):
        clean = {}
        if terms:
            for e, c in terms.items():
                c = as_fraction(c)
                if c:
                    clean[int(e)] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "LaurentPoly":
        # caller guarantees no zero coefficients
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c: Scalar) -> "LaurentPoly":
        c = as_fraction(c)
        return cls._raw({0: c} if c else {})

    @classmethod
    def z(cls, exponent: int = 1) -> "LaurentPoly":
        return cls._raw({exponent: Fraction(1)})

    @classmethod
    def coerce(cls, value) -> "LaurentPoly":
        if isinstance(value, LaurentPoly):
            return value
        return cls.const(value)

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coeff(self, exponent: int) -> Fraction:
        return self._terms.get(exponent, Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or set(self._terms) == {0}

    def constant(self) -> Fraction:
        return self._terms.get(0, Fraction(0))

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    # arithmetic

    def __add__(self, other) -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            other = LaurentPoly.const(other)
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return LaurentPoly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> "LaurentPoly":
        if not isinstance(other, (LaurentPoly, int, Fraction)):
            return NotImplemented
        return self + (-LaurentPoly.coerce(other))

    def __rsub__(self, other) -> "LaurentPoly":
        return LaurentPoly.coerce(other) - self

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, (int, Fraction)):
            if not other:
                return LaurentPoly._raw({})
            return LaurentPoly._raw({e: c * other for e, c in self._terms.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if not self._terms or not other._terms:
            return LaurentPoly._raw({})
        if len(other._terms) == 1 and 0 in other._terms:
            return self * other._terms[0]
        if len(self._terms) == 1 and 0 in self._terms:
            return other * self._terms[0]
        out: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly._raw({e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if len(other._terms) != 1:
                raise ZeroDivisionError("only division by a monomial c*z^k is exact")
            (e, c), = other._terms.items()
            return LaurentPoly._raw({k - e: v / c for k, v in self._terms.items()})
        other = as_fraction(other)
        if not other:
            raise ZeroDivisionError("division by zero")
        return LaurentPoly._raw({e: c / other for e, c in self._terms.items()})

    def __pow__(self, n: int) -> "LaurentPoly":
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            if len(self._terms) != 1:
                raise ZeroDivisionError("negative power of a non-monomial Laurent polynomial")
            (e, c), = self._terms.items()
            return LaurentPoly._raw({e * n: c**n})
        result = LaurentPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == LaurentPoly.const(other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # rendering

    def sorted_items(self):
        """Terms in rendering order: descending z-exponent."""
        return sorted(self._terms.items(), key=lambda t: -t[0])

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in self.sorted_items():
            mag = abs(c)
            if e == 0:
                body = _fmt_fraction(mag)
            else:
                zpart = "z" if e == 1 else f"z^{e}"
                body = zpart if mag == 1 else f"{_fmt_fraction(mag)}*{zpart}"
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append((" - " if c < 0 else " + ") + body)
        return "".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly('{self}')"

    def to_json(self) -> list:
        return [[e, c.numerator, c.denominator] for e, c in self.sorted_items()]

    @classmethod
    def from_json(cls, data: Iterable) -> "LaurentPoly":
        out: dict = {}
        for e, num, den in data:
            out[int(e)] = out.get(int(e), 0) + Fraction(int(num), int(den))
        return cls(out)


def laurent_arith(a: LaurentPoly, b: LaurentPoly, op: str) -> LaurentPoly:
    """Dispatch ``add``, ``mul`` or ``neg`` (``neg`` ignores ``b``)."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    raise ValueError(f"unknown op {op!r}")


ZERO = LaurentPoly()
ONE = LaurentPoly.const(1)


class BivariateSeries:
    """Power series in ``x, y`` with Laurent coefficients, truncated at total degree ``order``."""

    __slots__ = ("order", "_coeffs")

    def __init__(self, order: int, coeffs: Mapping[tuple[int, int], object] | None = None):
        if order < 0:
            raise ValueError("truncation order must be non-negative")
        self.order = order
        clean = {}
        for (m, n), c in (coeffs or {}).items():
            if m < 0 or n < 0:
                raise ValueError("series exponents must be non-negative")
            if m + n > order:
                continue
            c = LaurentPoly.coerce(c)
            if c:
                clean[(m, n)] = c
        self._coeffs = clean

    @classmethod
    def one(cls, order: int) -> "BivariateSeries":
        return cls(order, {(0, 0): ONE})

    @classmethod
    def x(cls, order: int) -> "BivariateSeries":
        return cls(order, {(1, 0): ONE})

    @classmethod
    def y(cls, order: int) -> "BivariateSeries":
        return cls(order, {(0, 1): ONE})

    def __getitem__(self, key: tuple[int, int]) -> LaurentPoly:
        return self._coeffs.get(key, ZERO)

    def items(self):
        return self._coeffs.items()

    def constant(self) -> LaurentPoly:
        return self[(0, 0)]

    def _check(self, other: "BivariateSeries"):
        if not isinstance(other, BivariateSeries):
            raise TypeError("expected a BivariateSeries")
        if other.order != self.order:
            raise ValueError(f"truncation orders differ: {self.order} vs {other.order}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction, LaurentPoly)):
            other = BivariateSeries(self.order, {(0, 0): other})
        self._check(other)
        out = dict(self._coeffs)
        for k, c in other._coeffs.items():
            out[k] = out.get(k, ZERO) + c
        return BivariateSeries(self.order, out)

    __radd__ = __add__

    def __neg__(self):
        return BivariateSeries(self.order, {k: -c for k, c in self._coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, LaurentPoly)):
            return BivariateSeries(self.order, {k: c * other for k, c in self._coeffs.items()})
        self._check(other)
        out: dict = {}
        for (m1, n1), c1 in self._coeffs.items():
            for (m2, n2), c2 in other._coeffs.items():
                if m1 + m2 + n1 + n2 > self.order:
                    continue
                key = (m1 + m2, n1 + n2)
                out[key] = out.get(key, ZERO) + c1 * c2
        return BivariateSeries(self.order, out)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return BivariateSeries(self.order, {k: c / scalar for k, c in self._coeffs.items()})

    def __eq__(self, other):
        if not isinstance(other, BivariateSeries):
            return NotImplemented
        return self.order == other.order and self._coeffs == other._coeffs

    def __hash__(self):
        return hash((self.order, frozenset(self._coeffs.items())))

    def __repr__(self):
        body = ", ".join(f"{k}: {c}" for k, c in sorted(self._coeffs.items()))
        return f"BivariateSeries(order={self.order}, {{{body}}})"


def _unit_part(s: BivariateSeries) -> BivariateSeries:
    """Return ``u`` with ``s = 1 + u``, ``u`` having no constant term."""
    if s.constant() != ONE:
        raise NonUnitConstantTerm(f"constant term is {s.constant()}, expected 1")
    return s - 1


def _compose(u: BivariateSeries, coefficients) -> BivariateSeries:
    # sum_k a_k u^k; u has zero constant term so u^(N+1) vanishes at order N
    total = BivariateSeries(u.order)
    power = BivariateSeries.one(u.order)
    for k in range(u.order + 1):
        a = coefficients(k)
        if a:
            total = total + power * a
        power = power * u
    return total


def _binom_half(k: int) -> Fraction:
    # generalized binomial coefficient C(1/2, k)
    out = Fraction(1)
    for j in range(k):
        out *= (Fraction(1, 2) - j) / (j + 1)
    return out


def series_sqrt(s: BivariateSeries) -> BivariateSeries:
    """Square root with constant term 1, via the binomial series of ``(1+u)^(1/2)``."""
    u = _unit_part(s)
    return _compose(u, _binom_half)


def series_log(s: BivariateSeries) -> BivariateSeries:
    """Mercator series ``log(1+u) = u - u^2/2 + ...`` truncated at the series order."""
    u = _unit_part(s)
    return _compose(u, lambda k: Fraction((-1) ** (k + 1), k) if k else Fraction(0))


def series_exp(s: BivariateSeries) -> BivariateSeries:
    """Exponential of a series with zero constant term."""
    if s.constant():
        raise ValueError("exp needs a series without constant term")
    fact = [Fraction(1)]
    for k in range(1, s.order + 1):
        fact.append(fact[-1] / k)
    return _compose(s, lambda k: fact[k])
