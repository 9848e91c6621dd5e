"""The Hopf algebra V = Q[e^(+-a1), ..., e^(+-aL)] (x) Q[x1, x2, ...] with coefficients in Q[z, 1/z].

A monomial is ``e^alpha x^I``: an integer vector ``alpha`` over the ``L``
grouplike generators and a sparse multi-index ``I`` over primitive
generators.  Primitive generators are identified by sortable keys whose kind
depends on the signature's naming scheme:

* ``"plain"``   -- positive ints ``n`` rendered ``xn``
* ``"lattice"`` -- pairs ``(i, m)`` rendered ``x(i,m)``, standing for alpha_i(-m)
* ``"twisted"`` -- positive odd ints ``2p`` for half-integer ``p``, rendered ``y(p)``

Any key of the right kind may be used at any time, so the countable family of
primitives is extended lazily.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Callable, Iterable, Iterator, Mapping, NamedTuple

from .coeffring import ONE, ZERO, LaurentPoly
from .errors import SignatureMismatch

NAMINGS = ("plain", "lattice", "twisted")


@dataclass(frozen=True)
class Signature:
    num_grouplike: int = 0
    naming: str = "plain"

    def __post_init__(self):
        if self.num_grouplike < 0:
            raise ValueError("number of grouplike generators must be >= 0")
        if self.naming not in NAMINGS:
            raise ValueError(f"unknown naming scheme {self.naming!r}")

    def check_primitive(self, pid) -> None:
        if self.naming == "plain":
            ok = isinstance(pid, int) and pid >= 1
        elif self.naming == "lattice":
            ok = (
                isinstance(pid, tuple)
                and len(pid) == 2
                and 1 <= pid[0] <= self.num_grouplike
                and pid[1] >= 1
            )
        else:
            ok = isinstance(pid, int) and pid >= 1 and pid % 2 == 1
        if not ok:
            raise SignatureMismatch(f"{pid!r} is not a primitive id for {self}")

    def primitive_name(self, pid) -> str:
        if self.naming == "plain":
            return f"x{pid}"
        if self.naming == "lattice":
            return f"x({pid[0]},{pid[1]})"
        return f"y({pid}/2)"

    def primitive_names(self, pids: Iterable) -> list[str]:
        return [self.primitive_name(p) for p in sorted(set(pids))]


class Monomial(NamedTuple):
    """``e^group * prod x_k^e`` with ``prims`` a sorted tuple of ``(key, exponent)``."""

    group: tuple
    prims: tuple = ()

    @classmethod
    def unit(cls, num_grouplike: int) -> "Monomial":
        return cls((0,) * num_grouplike, ())

    @classmethod
    def make(cls, group: Iterable[int], prims: Mapping | Iterable = ()) -> "Monomial":
        items = prims.items() if isinstance(prims, Mapping) else prims
        acc: dict = {}
        for k, e in items:
            acc[k] = acc.get(k, 0) + e
        return cls(tuple(group), tuple(sorted((k, e) for k, e in acc.items() if e)))

    def degree(self) -> int:
        return sum(e for _, e in self.prims)

    def prim_dict(self) -> dict:
        return dict(self.prims)

    def times(self, other: "Monomial") -> "Monomial":
        group = tuple(a + b for a, b in zip(self.group, other.group))
        if not other.prims:
            return Monomial(group, self.prims)
        if not self.prims:
            return Monomial(group, other.prims)
        acc = dict(self.prims)
        for k, e in other.prims:
            acc[k] = acc.get(k, 0) + e
        return Monomial(group, tuple(sorted(acc.items())))

    def with_group(self, group: tuple) -> "Monomial":
        return Monomial(group, self.prims)


def _format_group(group: tuple) -> str:
    parts = []
    for i, m in enumerate(group, start=1):
        if not m:
            continue
        mag = abs(m)
        body = f"a{i}" if mag == 1 else f"{mag}*a{i}"
        if not parts:
            parts.append(("-" if m < 0 else "") + body)
        else:
            parts.append((" - " if m < 0 else " + ") + body)
    return "e^(" + "".join(parts) + ")"


def format_monomial(sig: Signature, mono: Monomial) -> str:
    factors = []
    if any(mono.group):
        factors.append(_format_group(mono.group))
    for k, e in mono.prims:
        name = sig.primitive_name(k)
        factors.append(name if e == 1 else f"{name}^{e}")
    return "*".join(factors) if factors else "1"


def _format_coeff(c: LaurentPoly) -> tuple[str, bool]:
    """Render a coefficient as ``(text, negative)`` for use before a monomial."""
    if c.is_constant():
        q = c.constant()
        mag = abs(q)
        text = str(mag.numerator) if mag.denominator == 1 else f"{mag.numerator}/{mag.denominator}"
        return text, q < 0
    if len(c) == 1:
        (e, q), = c.items()
        return str(LaurentPoly({e: abs(q)})), q < 0
    return f"({c})", False


class HopfElement:
    """A finite combination of monomials with :class:`LaurentPoly` coefficients."""

    __slots__ = ("sig", "_terms")

    def __init__(self, sig: Signature, terms: Mapping[Monomial, object] | None = None):
        self.sig = sig
        clean: dict = {}
        for mono, c in (terms or {}).items():
            if len(mono.group) != sig.num_grouplike:
                raise SignatureMismatch(
                    f"monomial has {len(mono.group)} grouplike exponents, signature has {sig.num_grouplike}"
                )
            c = LaurentPoly.coerce(c)
            if c:
                clean[mono] = clean[mono] + c if mono in clean else c
        self._terms = {m: c for m, c in clean.items() if c}

    @classmethod
    def _raw(cls, sig: Signature, terms: dict) -> "HopfElement":
        obj = cls.__new__(cls)
        obj.sig = sig
        obj._terms = terms
        return obj

    # constructors

    @classmethod
    def zero(cls, sig: Signature) -> "HopfElement":
        return cls._raw(sig, {})

    @classmethod
    def one(cls, sig: Signature, coeff=1) -> "HopfElement":
        return cls(sig, {Monomial.unit(sig.num_grouplike): coeff})

    @classmethod
    def grouplike(cls, sig: Signature, vector: Iterable[int], coeff=1) -> "HopfElement":
        vector = tuple(vector)
        if len(vector) != sig.num_grouplike:
            raise SignatureMismatch("grouplike vector length does not match signature")
        return cls(sig, {Monomial(vector, ()): coeff})

    @classmethod
    def primitive(cls, sig: Signature, pid, power: int = 1, coeff=1) -> "HopfElement":
        sig.check_primitive(pid)
        mono = Monomial((0,) * sig.num_grouplike, ((pid, power),) if power else ())
        return cls(sig, {mono: coeff})

    @classmethod
    def monomial(cls, sig: Signature, group: Iterable[int] = None, prims=(), coeff=1) -> "HopfElement":
        group = tuple(group) if group is not None else (0,) * sig.num_grouplike
        mono = Monomial.make(group, prims)
        for k, _ in mono.prims:
            sig.check_primitive(k)
        return cls(sig, {mono: coeff})

    # access

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def sorted_items(self):
        return sorted(self._terms.items(), key=lambda t: t[0])

    def coeff(self, mono: Monomial) -> LaurentPoly:
        return self._terms.get(mono, ZERO)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def degree(self) -> int:
        return max((m.degree() for m in self._terms), default=0)

    def primitive_ids(self) -> set:
        return {k for m in self._terms for k, _ in m.prims}

    # arithmetic

    def _same(self, other: "HopfElement") -> None:
        if self.sig != other.sig:
            raise SignatureMismatch(f"{self.sig} vs {other.sig}")

    def _lift(self, other) -> "HopfElement":
        if isinstance(other, HopfElement):
            self._same(other)
            return other
        if isinstance(other, (int, Fraction, LaurentPoly)):
            return HopfElement.one(self.sig, other)
        raise TypeError(f"cannot combine HopfElement with {type(other).__name__}")

    def __add__(self, other) -> "HopfElement":
        other = self._lift(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out[m] + c if m in out else c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return HopfElement._raw(self.sig, out)

    __radd__ = __add__

    def __neg__(self) -> "HopfElement":
        return HopfElement._raw(self.sig, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "HopfElement":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "HopfElement":
        return self._lift(other) - self

    def scale(self, c) -> "HopfElement":
        c = LaurentPoly.coerce(c)
        if not c:
            return HopfElement.zero(self.sig)
        out = {}
        for m, v in self._terms.items():
            w = v * c
            if w:
                out[m] = w
        return HopfElement._raw(self.sig, out)

    def __mul__(self, other) -> "HopfElement":
        if isinstance(other, (int, Fraction, LaurentPoly)):
            return self.scale(other)
        if not isinstance(other, HopfElement):
            return NotImplemented
        return product(self, other)

    def __rmul__(self, other) -> "HopfElement":
        if isinstance(other, (int, Fraction, LaurentPoly)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int) -> "HopfElement":
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            if len(self._terms) != 1:
                raise ZeroDivisionError("only single grouplike monomials are invertible")
            (m, c), = self._terms.items()
            if m.prims:
                raise ZeroDivisionError("primitive generators are not invertible")
            return HopfElement._raw(
                self.sig, {Monomial(tuple(-g for g in m.group), ()): c**-1}
            ).__pow__(-n)
        result = HopfElement.one(self.sig)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def map_monomials(self, fn: Callable[[Monomial], "HopfElement"]) -> "HopfElement":
        """Extend ``fn`` (monomial -> element) linearly."""
        out: dict = {}
        for m, c in self._terms.items():
            for m2, c2 in fn(m)._terms.items():
                v = out[m2] + c * c2 if m2 in out else c * c2
                out[m2] = v
        return HopfElement._raw(self.sig, {k: v for k, v in out.items() if v})

    def __eq__(self, other) -> bool:
        if isinstance(other, HopfElement):
            return self.sig == other.sig and self._terms == other._terms
        if isinstance(other, (int, Fraction, LaurentPoly)):
            return self == HopfElement.one(self.sig, other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.sig, frozenset(self._terms.items())))

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        out = []
        for mono, c in self.sorted_items():
            ctext, neg = _format_coeff(c)
            mtext = format_monomial(self.sig, mono)
            if mtext == "1":
                body = ctext
            elif ctext == "1":
                body = mtext
            else:
                body = f"{ctext}*{mtext}"
            if not out:
                out.append(("-" if neg else "") + body)
            else:
                out.append((" - " if neg else " + ") + body)
        return "".join(out)

    def __repr__(self) -> str:
        return f"HopfElement({self})"

    def to_json(self) -> list:
        return [
            {
                "group": list(mono.group),
                "prims": [[_pid_json(k), e] for k, e in mono.prims],
                "coeff": c.to_json(),
            }
            for mono, c in self.sorted_items()
        ]


def _pid_json(pid):
    return list(pid) if isinstance(pid, tuple) else pid


def product(a: HopfElement, b: HopfElement) -> HopfElement:
    """Ordinary commutative product."""
    a._same(b)
    out: dict = {}
    for m1, c1 in a._terms.items():
        for m2, c2 in b._terms.items():
            m = m1.times(m2)
            v = c1 * c2
            out[m] = out[m] + v if m in out else v
    return HopfElement._raw(a.sig, {m: c for m, c in out.items() if c})


# tensors


class Tensor:
    """Element of ``V^(x)k`` with coefficients in A, keyed by tuples of monomials."""

    __slots__ = ("sig", "arity", "_terms")

    def __init__(self, sig: Signature, arity: int, terms: Mapping[tuple, object] | None = None):
        self.sig = sig
        self.arity = arity
        out: dict = {}
        for key, c in (terms or {}).items():
            if len(key) != arity:
                raise ValueError("tensor key has wrong arity")
            c = LaurentPoly.coerce(c)
            out[key] = out[key] + c if key in out else c
        self._terms = {k: v for k, v in out.items() if v}

    @classmethod
    def _raw(cls, sig, arity, terms) -> "Tensor":
        obj = cls.__new__(cls)
        obj.sig = sig
        obj.arity = arity
        obj._terms = terms
        return obj

    def items(self):
        return self._terms.items()

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def __len__(self):
        return len(self._terms)

    def __add__(self, other: "Tensor") -> "Tensor":
        if self.sig != other.sig or self.arity != other.arity:
            raise SignatureMismatch("tensor shapes differ")
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out[k] + c if k in out else c
        return Tensor._raw(self.sig, self.arity, {k: v for k, v in out.items() if v})

    def __eq__(self, other) -> bool:
        if not isinstance(other, Tensor):
            return NotImplemented
        return self.sig == other.sig and self.arity == other.arity and self._terms == other._terms

    def __hash__(self):
        return hash((self.sig, self.arity, frozenset(self._terms.items())))

    def permute(self, order: tuple) -> "Tensor":
        """Reorder slots: new slot ``j`` holds old slot ``order[j]``."""
        return Tensor._raw(
            self.sig, self.arity, {tuple(k[i] for i in order): c for k, c in self._terms.items()}
        )

    def swap(self) -> "Tensor":
        return self.permute(tuple(reversed(range(self.arity))))

    def map_slot(self, slot: int, fn: Callable[[Monomial], "HopfElement | Tensor"]) -> "Tensor":
        """Apply a linear map given on monomials to one slot.

        ``fn`` may return a HopfElement (slot stays one slot) or a Tensor
        (slot is expanded in place, raising the arity).
        """
        out: dict = {}
        new_arity = None
        for key, c in self._terms.items():
            image = fn(key[slot])
            if isinstance(image, HopfElement):
                parts = ((( m,), v) for m, v in image.items())
                width = 1
            else:
                parts = image.items()
                width = image.arity
            new_arity = self.arity - 1 + width
            for sub, v in parts:
                k2 = key[:slot] + tuple(sub) + key[slot + 1:]
                w = c * v
                out[k2] = out[k2] + w if k2 in out else w
        if new_arity is None:
            new_arity = self.arity
        return Tensor._raw(self.sig, new_arity, {k: v for k, v in out.items() if v})

    def contract(self, slots: tuple, fn: Callable[..., LaurentPoly], keep: int | None = None):
        """Evaluate ``fn`` on the given slots and multiply into the remaining ones.

        Returns a HopfElement when exactly one slot remains, else a scalar.
        """
        rest = [i for i in range(self.arity) if i not in slots]
        if len(rest) > 1:
            raise ValueError("contract leaves at most one slot")
        out: dict = {}
        total = ZERO
        for key, c in self._terms.items():
            val = fn(*(key[i] for i in slots))
            if not val:
                continue
            w = c * val
            if rest:
                m = key[rest[0]]
                out[m] = out[m] + w if m in out else w
            else:
                total = total + w
        if rest:
            return HopfElement._raw(self.sig, {k: v for k, v in out.items() if v})
        return total

    def multiply_slots(self) -> HopfElement:
        """Multiply all slots together (the iterated product map)."""
        out: dict = {}
        for key, c in self._terms.items():
            m = key[0]
            for k in key[1:]:
                m = m.times(k)
            out[m] = out[m] + c if m in out else c
        return HopfElement._raw(self.sig, {k: v for k, v in out.items() if v})

    def __repr__(self):
        body = " + ".join(
            f"({c})*" + "(x)".join(format_monomial(self.sig, m) for m in key)
            for key, c in sorted(self._terms.items())
        )
        return f"Tensor[{self.arity}]({body or '0'})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        out = []
        for key, c in sorted(self._terms.items()):
            ctext, neg = _format_coeff(c)
            body = " (x) ".join(format_monomial(self.sig, m) for m in key)
            if ctext != "1":
                body = f"{ctext}*({body})" if self.arity > 1 else f"{ctext}*{body}"
            if not out:
                out.append(("-" if neg else "") + body)
            else:
                out.append((" - " if neg else " + ") + body)
        return "".join(out)


def tensor_product(*elements: HopfElement) -> Tensor:
    sig = elements[0].sig
    out: dict = {}
    for combo in itertools.product(*(e.items() for e in elements)):
        key = tuple(m for m, _ in combo)
        c = ONE
        for _, v in combo:
            c = c * v
        out[key] = out[key] + c if key in out else c
    return Tensor._raw(sig, len(elements), {k: v for k, v in out.items() if v})


def tensor_multiply(t1: Tensor, t2: Tensor) -> Tensor:
    """Slotwise product of two tensors of equal arity."""
    if t1.arity != t2.arity or t1.sig != t2.sig:
        raise SignatureMismatch("tensor shapes differ")
    out: dict = {}
    for k1, c1 in t1._terms.items():
        for k2, c2 in t2._terms.items():
            key = tuple(a.times(b) for a, b in zip(k1, k2))
            v = c1 * c2
            out[key] = out[key] + v if key in out else v
    return Tensor._raw(t1.sig, t1.arity, {k: v for k, v in out.items() if v})


# structure maps


def _compositions(n: int, parts: int) -> Iterator[tuple]:
    if parts == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in _compositions(n - first, parts - 1):
            yield (first,) + rest


def _multinomial(ks: tuple) -> int:
    out = factorial(sum(ks))
    for k in ks:
        out //= factorial(k)
    return out


def split_monomial(mono: Monomial, parts: int) -> Iterator[tuple[tuple, int]]:
    """Yield ``(monomials, multiplicity)`` for the iterated coproduct of one monomial.

    The grouplike factor is copied into every slot; each ``x^k`` is spread over
    the slots with multinomial multiplicities.
    """
    per_var = []
    for k, e in mono.prims:
        per_var.append([(k, comp) for comp in _compositions(e, parts)])
    for choice in itertools.product(*per_var):
        mult = 1
        slots = [[] for _ in range(parts)]
        for k, comp in choice:
            mult *= _multinomial(comp)
            for j, e in enumerate(comp):
                if e:
                    slots[j].append((k, e))
        yield tuple(Monomial(mono.group, tuple(s)) for s in slots), mult


def _iterated_coproduct(a: HopfElement, parts: int) -> Tensor:
    out: dict = {}
    for mono, c in a._terms.items():
        for key, mult in split_monomial(mono, parts):
            v = c * mult
            out[key] = out[key] + v if key in out else v
    return Tensor._raw(a.sig, parts, {k: v for k, v in out.items() if v})


def coproduct(a: HopfElement) -> Tensor:
    """Delta, with x primitive and e^alpha grouplike; x^k splits binomially."""
    return _iterated_coproduct(a, 2)


def coproduct2(a: HopfElement) -> Tensor:
    """(Delta (x) Id) o Delta."""
    return _iterated_coproduct(a, 3)


def counit_monomial(mono: Monomial) -> int:
    return 0 if mono.prims else 1


def counit(a: HopfElement) -> LaurentPoly:
    total = ZERO
    for mono, c in a._terms.items():
        if not mono.prims:
            total = total + c
    return total


def antipode_monomial(sig: Signature, mono: Monomial) -> HopfElement:
    sign = -1 if mono.degree() % 2 else 1
    return HopfElement._raw(sig, {Monomial(tuple(-g for g in mono.group), mono.prims): LaurentPoly.const(sign)})


def antipode(a: HopfElement) -> HopfElement:
    return a.map_monomials(lambda m: antipode_monomial(a.sig, m))


def operator_coproduct(a: HopfElement) -> Tensor:
    """Coproduct via the exponential shift operator.

    Start from ``1 (x) a``.  On the eigenspace of the second-slot grouplike
    derivations with eigenvalues ``m_i``, ``exp(sum alpha_i^(1) d/d alpha_i^(2))``
    multiplies the first slot by ``e^alpha``; then
    ``exp(sum_n x_n^(1) d/dx_n^(2))`` is summed as a (terminating) power series.
    """
    sig = a.sig
    unit = Monomial.unit(sig.num_grouplike)
    current: dict = {}
    for mono, c in a._terms.items():
        key = (Monomial(mono.group, ()), mono)
        current[key] = current[key] + c if key in current else c
    total = dict(current)
    k = 0
    while current:
        k += 1
        nxt: dict = {}
        for (left, right), c in current.items():
            for pid, e in right.prims:
                new_right = Monomial.make(right.group, dict(right.prims) | {pid: e - 1})
                new_left = left.times(Monomial(unit.group, ((pid, 1),)))
                key = (new_left, new_right)
                v = c * e
                nxt[key] = nxt[key] + v if key in nxt else v
        current = {kk: v for kk, v in nxt.items() if v}
        for key, v in current.items():
            w = v / factorial(k)
            total[key] = total[key] + w if key in total else w
    return Tensor(sig, 2, total)
