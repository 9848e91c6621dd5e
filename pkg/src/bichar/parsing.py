"""Recursive-descent parser for element and coefficient expressions.

Grammar (whitespace ignored)::

    expr    := sign? term (('+' | '-') term)*
    term    := factor ('*' factor)*
    factor  := atom ('^' sign? INT)?
    atom    := INT ('/' INT)? | 'z' | 'e' '^' '(' lin ')' | gen | '(' expr ')'
    lin     := sign? lterm (('+' | '-') lterm)*
    lterm   := (INT '*')? 'a' INT
    gen     := 'x' INT | 'x' '(' INT ',' INT ')' | 'y' '(' INT '/' '2' ')'

Which generator spelling is accepted depends on the signature's naming.
Juxtaposition is not allowed.
"""

from __future__ import annotations

from fractions import Fraction

from .coeffring import LaurentPoly
from .errors import ParseError, SignatureMismatch, UnknownGenerator
from .hopf import HopfElement, Monomial, Signature

ATOM_START = ("integer", "'z'", "'e^('", "generator", "'('")


class _Parser:
    def __init__(self, src: str, sig: Signature):
        self.src = src
        self.sig = sig
        self.pos = 0

    # lexing helpers

    def _skip(self):
        while self.pos < len(self.src) and self.src[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self._skip()
        return self.src[self.pos] if self.pos < len(self.src) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            raise ParseError(f"unexpected {self._describe()}", self.pos, [repr(ch)])
        self.pos += 1

    def _describe(self) -> str:
        c = self.peek()
        return f"character {c!r}" if c else "end of input"

    def integer(self) -> int:
        self._skip()
        start = self.pos
        while self.pos < len(self.src) and self.src[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise ParseError(f"unexpected {self._describe()}", self.pos, ["integer"])
        return int(self.src[start:self.pos])

    # grammar

    def parse(self) -> HopfElement:
        value = self.expr()
        self._skip()
        if self.pos != len(self.src):
            raise ParseError(f"unexpected {self._describe()}", self.pos, ["'+'", "'-'", "'*'", "end of input"])
        return value

    def expr(self) -> HopfElement:
        sign = 1
        if self.peek() in "+-" and self.peek():
            sign = -1 if self.peek() == "-" else 1
            self.pos += 1
        value = self.term()
        if sign < 0:
            value = -value
        while self.peek() and self.peek() in "+-":
            op = self.peek()
            self.pos += 1
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> HopfElement:
        value = self.factor()
        while self.peek() == "*":
            self.pos += 1
            value = value * self.factor()
        return value

    def factor(self) -> HopfElement:
        base = self.atom()
        if self.peek() == "^":
            self.pos += 1
            sign = 1
            if self.peek() and self.peek() in "+-":
                sign = -1 if self.peek() == "-" else 1
                self.pos += 1
            at = self.pos
            n = sign * self.integer()
            try:
                base = base**n
            except ZeroDivisionError as exc:
                raise ParseError(f"cannot raise to a negative power: {exc}", at) from None
        return base

    def atom(self) -> HopfElement:
        c = self.peek()
        sig = self.sig
        if c.isdigit():
            num = self.integer()
            if self.peek() == "/":
                self.pos += 1
                at = self.pos
                den = self.integer()
                if den == 0:
                    raise ParseError("zero denominator", at)
                return HopfElement.one(sig, Fraction(num, den))
            return HopfElement.one(sig, num)
        if c == "(":
            self.pos += 1
            value = self.expr()
            self.expect(")")
            return value
        if c == "z":
            self.pos += 1
            return HopfElement.one(sig, LaurentPoly.z())
        if c == "e":
            self.pos += 1
            self.expect("^")
            self.expect("(")
            vec = self.lin()
            self.expect(")")
            return HopfElement.grouplike(sig, vec)
        if c == "x" or c == "y":
            return self.generator()
        if c == "a":
            raise ParseError("grouplike generators only appear inside e^( ... )", self.pos)
        raise ParseError(f"unexpected {self._describe()}", self.pos, ATOM_START)

    def lin(self) -> tuple:
        vec = [0] * self.sig.num_grouplike
        sign = 1
        if self.peek() and self.peek() in "+-":
            sign = -1 if self.peek() == "-" else 1
            self.pos += 1
        while True:
            coeff = 1
            if self.peek().isdigit():
                coeff = self.integer()
                self.expect("*")
            if self.peek() != "a":
                raise ParseError(f"unexpected {self._describe()}", self.pos, ["'a'"])
            at = self.pos
            self.pos += 1
            idx = self.integer()
            if not 1 <= idx <= self.sig.num_grouplike:
                raise UnknownGenerator(f"a{idx} at offset {at}: signature has {self.sig.num_grouplike} grouplike generators")
            vec[idx - 1] += sign * coeff
            if self.peek() and self.peek() in "+-":
                sign = -1 if self.peek() == "-" else 1
                self.pos += 1
                continue
            return tuple(vec)

    def generator(self) -> HopfElement:
        at = self.pos
        letter = self.src[self.pos]
        self.pos += 1
        naming = self.sig.naming
        if letter == "x" and naming == "plain":
            pid = self.integer()
        elif letter == "x" and naming == "lattice":
            self.expect("(")
            i = self.integer()
            self.expect(",")
            m = self.integer()
            self.expect(")")
            pid = (i, m)
        elif letter == "y" and naming == "twisted":
            self.expect("(")
            pid = self.integer()
            self.expect("/")
            two = self.integer()
            self.expect(")")
            if two != 2:
                raise ParseError("twisted variables are y(p/2)", at)
        else:
            raise UnknownGenerator(f"{letter}-generators are not part of a {naming} signature (offset {at})")
        try:
            return HopfElement.primitive(self.sig, pid)
        except SignatureMismatch:
            raise UnknownGenerator(f"unknown generator at offset {at}") from None


def parse_element(src: str, sig: Signature) -> HopfElement:
    return _Parser(src, sig).parse()


_COEFF_SIG = Signature(0, "plain")


def parse_coefficient(src) -> LaurentPoly:
    """Parse a Laurent polynomial in ``z`` such as ``-1/4*z^-1 + 3/32*z^-2``."""
    if isinstance(src, (int, Fraction)):
        return LaurentPoly.const(src)
    try:
        value = _Parser(str(src), _COEFF_SIG).parse()
    except UnknownGenerator as exc:
        raise ParseError(f"coefficients may only use z ({exc})", 0) from None
    unit = Monomial.unit(0)
    if any(m != unit for m, _ in value.items()):
        raise ParseError("coefficients may only use z", 0)
    return value.coeff(unit)


def parse_primitive(value, sig: Signature):
    """A primitive id from config data: ``3`` / ``"x3"`` / ``[1, 2]`` / ``"x(1,2)"``."""
    if isinstance(value, (list, tuple)):
        pid = tuple(int(v) for v in value)
    elif isinstance(value, int) and sig.naming != "lattice":
        pid = value
    elif isinstance(value, str):
        elem = parse_element(value, sig)
        (mono, _), = elem.items()
        if len(mono.prims) != 1 or mono.prims[0][1] != 1:
            raise ParseError(f"{value!r} is not a single primitive generator", 0)
        pid = mono.prims[0][0]
    else:
        raise ParseError(f"cannot read primitive id {value!r}", 0)
    try:
        sig.check_primitive(pid)
    except SignatureMismatch as exc:
        raise UnknownGenerator(str(exc)) from None
    return pid
