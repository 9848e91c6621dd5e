"""Lattice data, the log-sqrt generating series and the induced bicharacter.

Primitive generators are the alpha_i(-m), keyed ``(i, m)`` with 1-based ``i``.
The orthonormal h-basis is never built: the bicharacter values in the
alpha_i(-m) basis only involve Gram entries and the series coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .bicharacter import BicharSpec, evaluate, symmetrize
from .coeffring import ZERO, BivariateSeries, LaurentPoly, as_fraction, series_log, series_sqrt
from .errors import BicharError, NonConstantGrouplikeValue
from .hopf import HopfElement, Signature
from .quadop import QuadraticOperator, apply_exp_q
from .twisting import bullet_element, eq_map


def determinant(matrix) -> Fraction:
    """Exact determinant by fraction-valued Gaussian elimination."""
    a = [[as_fraction(v) for v in row] for row in matrix]
    n = len(a)
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        det *= a[col][col]
        for r in range(col + 1, n):
            f = a[r][col] / a[col][col]
            if f:
                for c in range(col, n):
                    a[r][c] -= f * a[col][c]
    return det


@dataclass(frozen=True)
class Lattice:
    rank: int
    gram: tuple

    def __post_init__(self):
        gram = tuple(tuple(as_fraction(v) for v in row) for row in self.gram)
        if len(gram) != self.rank or any(len(row) != self.rank for row in gram):
            raise BicharError(f"gram matrix must be {self.rank}x{self.rank}")
        if any(gram[i][j] != gram[j][i] for i in range(self.rank) for j in range(self.rank)):
            raise BicharError("gram matrix must be symmetric")
        if self.rank and not determinant(gram):
            raise BicharError("gram matrix must be nondegenerate")
        object.__setattr__(self, "gram", gram)

    def pair(self, alpha, beta) -> Fraction:
        """<alpha|beta> for integer coordinate vectors."""
        return sum(
            (a * self.gram[i][j] * b for i, a in enumerate(alpha) for j, b in enumerate(beta) if a and b),
            Fraction(0),
        )

    def basis(self, i: int) -> tuple:
        return tuple(1 if j == i else 0 for j in range(self.rank))

    @property
    def signature(self) -> Signature:
        return Signature(self.rank, "lattice")


@dataclass(frozen=True)
class SeriesCoefficients:
    order: int
    c: dict = field(hash=False)

    def __getitem__(self, key) -> LaurentPoly:
        m, n = key
        if m + n > self.order:
            raise KeyError(f"c_{m}{n} is beyond truncation order {self.order}")
        return self.c.get((m, n), ZERO)

    def to_json(self) -> list:
        return [
            {"m": m, "n": n, "value": self[(m, n)].to_json(), "text": str(self[(m, n)])}
            for m in range(self.order + 1)
            for n in range(self.order + 1 - m)
        ]


def flm_series(order: int) -> SeriesCoefficients:
    """Coefficients of -log((sqrt(1 + x/z) + sqrt(1 + y/z)) / 2) up to total degree ``order``."""
    if order < 0:
        raise ValueError("order must be >= 0")
    zinv = LaurentPoly.z(-1)
    sx = series_sqrt(BivariateSeries.one(order) + BivariateSeries.x(order) * zinv)
    sy = series_sqrt(BivariateSeries.one(order) + BivariateSeries.y(order) * zinv)
    total = -series_log((sx + sy) / 2)
    return SeriesCoefficients(order, {k: v for k, v in total.items()})


def lattice_bicharacter(lat: Lattice, c: SeriesCoefficients, depth: int) -> BicharSpec:
    """Bicharacter on C[Q] (x) C[alpha_i(-m)] for m <= depth."""
    if depth < 1:
        raise ValueError("depth must be >= 1")
    if 2 * depth > c.order:
        raise ValueError(f"series order {c.order} too small for depth {depth}; need >= {2 * depth}")
    c00 = c[(0, 0)]
    if not c00.is_constant():
        raise NonConstantGrouplikeValue(f"c_00 = {c00} depends on z")
    if c00.constant() and any(v for row in lat.gram for v in row):
        # (e^c00)^<a|b> is irrational for nonzero rational c00
        raise NonConstantGrouplikeValue(f"c_00 = {c00} gives irrational grouplike values")
    ell = lat.rank
    gp, pg, pp = {}, {}, {}
    for i in range(ell):
        for j in range(ell):
            g = lat.gram[i][j]
            if not g:
                continue
            for m in range(1, depth + 1):
                gp[(i, (j + 1, m))] = c[(0, m)] * g
                pg[((j + 1, m), i)] = c[(m, 0)] * g
                for n in range(1, depth + 1):
                    pp[((i + 1, m), (j + 1, n))] = c[(m, n)] * g
    return BicharSpec(lat.signature, None, gp, pg, pp)


def _alphas(lat: Lattice) -> list[tuple]:
    out = [lat.basis(i) for i in range(lat.rank)]
    if lat.rank >= 1:
        out.append(tuple(1 for _ in range(lat.rank)))
        out.append(tuple(2 if i == 0 else 0 for i in range(lat.rank)))
    if lat.rank >= 2:
        out.append(tuple(1 if i == 0 else (-1 if i == 1 else 0) for i in range(lat.rank)))
    return list(dict.fromkeys(out))


def _expected(lat: Lattice, kind: str, alpha: tuple, i: int) -> HopfElement:
    """Closed forms from the worked lattice example (no z-dependent grouplike factor)."""
    sig = lat.signature
    ai = lat.basis(i)
    pid = (i + 1, 1)
    x = HopfElement.primitive(sig, pid)
    e = HopfElement.grouplike(sig, alpha)
    z1 = LaurentPoly.z(-1)
    z2 = LaurentPoly.z(-2)
    a_ai = lat.pair(alpha, ai)
    ai_ai = lat.pair(ai, ai)
    if kind == "e^a":
        return e
    if kind == "e^a x":
        return e * x - e.scale(z1 * (a_ai / 2))
    if kind == "x^2":
        return x * x + z2 * (ai_ai / 8)
    if kind == "e^a x^2":
        return e * (x * x - x.scale(z1 * (2 * a_ai / 2)) + z2 * (a_ai**2 / 4) + z2 * (ai_ai / 8))
    raise ValueError(kind)


def run_flm_example(lat: Lattice, order: int = 4, depth: int = 1) -> dict:
    """Reproduce the worked lattice example for every alpha_i and a few alphas.

    Each identity is computed by eq_map, by exp(Q) and by the bullet word,
    and compared to the closed form.  The <alpha_i|alpha_j> appearing on the
    right of e^Q((alpha_i(-1))^2) is read as <alpha_i|alpha_i>.
    """
    sig = lat.signature
    c = flm_series(order)
    r = lattice_bicharacter(lat, c, depth)
    s = symmetrize(r)
    q = QuadraticOperator(r)
    identities = []
    svalues = []

    def record(name: str, inp: HopfElement, expected: HopfElement):
        via_eq = eq_map(r, inp)
        via_q = apply_exp_q(q, inp)
        (mono, coeff), = inp.items()
        via_bullet = bullet_element(r, s, mono, coeff)
        ok = via_eq == via_q == via_bullet == expected
        identities.append(
            {
                "name": name,
                "input": str(inp),
                "eq_map": str(via_eq),
                "exp_q": str(via_q),
                "bullet": str(via_bullet),
                "expected": str(expected),
                "lhs": str(via_q),
                "rhs": str(expected),
                "equal": ok,
            }
        )

    alphas = _alphas(lat)
    for alpha in alphas:
        e = HopfElement.grouplike(sig, alpha)
        for beta in alphas:
            svalues.append(
                {
                    "pair": f"s({e} (x) {HopfElement.grouplike(sig, beta)})",
                    "value": str(evaluate(s, e, HopfElement.grouplike(sig, beta))),
                    "expected": "1",
                }
            )
        for i in range(lat.rank):
            x = HopfElement.primitive(sig, (i + 1, 1))
            expected = -LaurentPoly.z(-1) * (lat.pair(alpha, lat.basis(i)) / 2)
            svalues.append(
                {
                    "pair": f"s({e} (x) alpha_{i + 1}(-1))",
                    "value": str(evaluate(s, e, x)),
                    "expected": str(expected),
                }
            )
        record(f"e^Q({e})", e, _expected(lat, "e^a", alpha, 0))
    for i in range(lat.rank):
        xi = HopfElement.primitive(sig, (i + 1, 1))
        for j in range(lat.rank):
            xj = HopfElement.primitive(sig, (j + 1, 1))
            expected = LaurentPoly.z(-2) * (lat.gram[i][j] / 8)
            svalues.append(
                {
                    "pair": f"s(alpha_{i + 1}(-1) (x) alpha_{j + 1}(-1))",
                    "value": str(evaluate(s, xi, xj)),
                    "expected": str(expected),
                }
            )
        record(f"e^Q((alpha_{i + 1}(-1))^2)", xi * xi, _expected(lat, "x^2", alphas[0], i))
        for alpha in alphas:
            e = HopfElement.grouplike(sig, alpha)
            record(f"e^Q({e} alpha_{i + 1}(-1))", e * xi, _expected(lat, "e^a x", alpha, i))
            record(f"e^Q({e} (alpha_{i + 1}(-1))^2)", e * xi * xi, _expected(lat, "e^a x^2", alpha, i))
    for sv in svalues:
        sv["equal"] = sv["value"] == sv["expected"]
    return {
        "rank": lat.rank,
        "gram": [[str(v) for v in row] for row in lat.gram],
        "series": {f"c{m}{n}": str(c[(m, n)]) for m in range(3) for n in range(3 - m)},
        "note": "<alpha_i|alpha_j> in e^Q((alpha_i(-1))^2) read as <alpha_i|alpha_i>",
        "s_values": svalues,
        "identities": identities,
        "all_equal": all(x["equal"] for x in identities) and all(x["equal"] for x in svalues),
    }
