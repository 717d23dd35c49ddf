"""Knot-type fingerprints: Kauffman bracket, Jones polynomial, determinant.

Bracket conventions: the A-smoothing at a crossing with PD slots
``(a, b, c, d)`` joins ``a-b`` and ``c-d``; a disjoint loop contributes
``-A^2 - A^-2``.  With these, a positive kink has bracket ``-A^3`` and the
right-handed trefoil has Jones polynomial ``t + t^3 - t^4``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from .diagram import Diagram, checkerboard, pd_code
from .errors import DiagramError, TooManyCrossings

MAX_CROSSINGS = 20


class LaurentPoly:
    """Integer Laurent polynomial in one variable, stored sparsely."""

    __slots__ = ("var", "_terms")

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] = (), var: str = "A"):
        acc: dict[int, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for e, c in items:
            acc[int(e)] = acc.get(int(e), 0) + int(c)
        self._terms = tuple(sorted((e, c) for e, c in acc.items() if c != 0))
        self.var = var

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1, var: str = "A") -> "LaurentPoly":
        return cls({exp: coeff}, var)

    @classmethod
    def one(cls, var: str = "A") -> "LaurentPoly":
        return cls({0: 1}, var)

    @property
    def terms(self) -> tuple[tuple[int, int], ...]:
        return self._terms

    def as_dict(self) -> dict[int, int]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly({0: other}, self.var)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return LaurentPoly(self._terms + other._terms, self.var)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(((e, -c) for e, c in self._terms), self.var)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc: dict[int, int] = {}
        for e1, c1 in self._terms:
            for e2, c2 in other._terms:
                acc[e1 + e2] = acc.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(acc, self.var)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self._terms) != 1 or abs(self._terms[0][1]) != 1:
                raise ValueError("only unit monomials have Laurent inverses")
            e, c = self._terms[0]
            return LaurentPoly({-e * -k: c ** -k}, self.var)
        out = LaurentPoly.one(self.var)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly({0: other}, self.var)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms and (self.var == other.var or not self._terms)

    def __hash__(self):
        return hash((self.var, self._terms))

    def invert_variable(self) -> "LaurentPoly":
        """Substitute ``x -> x^-1``."""
        return LaurentPoly(((-e, c) for e, c in self._terms), self.var)

    def evaluate(self, x) -> Fraction:
        return sum((c * Fraction(x) ** e for e, c in self._terms), Fraction(0))

    def to_json(self) -> dict:
        return {"var": self.var, "terms": [[e, c] for e, c in self._terms]}

    @classmethod
    def from_json(cls, data: Mapping) -> "LaurentPoly":
        return cls([(e, c) for e, c in data["terms"]], data.get("var", "A"))

    def __repr__(self):
        if not self._terms:
            return "0"
        parts = []
        for e, c in reversed(self._terms):
            mono = "" if e == 0 else (self.var if e == 1 else f"{self.var}^{e}")
            if mono and abs(c) == 1:
                coeff = "-" if c < 0 else ""
            else:
                coeff = str(c) + ("*" if mono else "")
            parts.append(coeff + mono)
        return " + ".join(parts).replace("+ -", "- ")


DELTA = LaurentPoly({2: -1, -2: -1})


def _loops(n_edges: int, pairs) -> int:
    parent = list(range(n_edges))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    comps = n_edges
    for a, b in pairs:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
            comps -= 1
    return comps


def kauffman_bracket(d: Diagram, max_crossings: int = MAX_CROSSINGS) -> LaurentPoly:
    """Bracket polynomial in ``A`` by the full ``2^n`` state sum (``<O> = 1``)."""
    n = d.n
    if n > max_crossings:
        raise TooManyCrossings(f"{n} crossings exceed the state-sum cap {max_crossings}")
    if n == 0:
        return LaurentPoly.one()
    pd = pd_code(d)
    a_pairs = [((s[0], s[1]), (s[2], s[3])) for s in pd]
    b_pairs = [((s[0], s[3]), (s[1], s[2])) for s in pd]
    n_edges = 2 * n
    # tally states by (#A - #B, loops) before expanding
    tally: dict[tuple[int, int], int] = {}
    for state in range(1 << n):
        pairs = []
        a_count = 0
        for c in range(n):
            if state >> c & 1:
                pairs.extend(b_pairs[c])
            else:
                pairs.extend(a_pairs[c])
                a_count += 1
        key = (2 * a_count - n, _loops(n_edges, pairs))
        tally[key] = tally.get(key, 0) + 1
    total = LaurentPoly()
    delta_powers = {}
    for (exp, loops), count in tally.items():
        if loops not in delta_powers:
            delta_powers[loops] = DELTA ** (loops - 1)
        total = total + LaurentPoly.monomial(exp, count) * delta_powers[loops]
    return total


def jones(d: Diagram, max_crossings: int = MAX_CROSSINGS) -> LaurentPoly:
    """Jones polynomial in ``t``: ``(-A^3)^(-w) <D>`` with ``t = A^-4``."""
    norm = kauffman_bracket(d, max_crossings) * LaurentPoly.monomial(-3 * d.writhe(), (-1) ** (d.writhe() % 2))
    terms = {}
    for e, c in norm.terms:
        if e % 4:
            raise DiagramError("bracket exponents of a knot must be multiples of 4 after normalisation")
        terms[-e // 4] = c
    return LaurentPoly(terms, "t")


def _bareiss_det(m: list[list[int]]) -> int:
    n = len(m)
    if n == 0:
        return 1
    a = [row[:] for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def goeritz_matrix(d: Diagram) -> list[list[int]]:
    """Goeritz matrix over the colour-0 faces of a checkerboard colouring."""
    if d.n == 0:
        return [[0]]
    fs, colour = checkerboard(d)
    white = [i for i, c in enumerate(colour) if c == 0]
    index = {f: i for i, f in enumerate(white)}
    g = [[0] * len(white) for _ in white]
    for c in range(d.n):
        f01, f12, f23, f30 = (fs.corner_face[(c, s)] for s in range(4))
        if colour[f01] == 0:
            eta, fa, fb = 1, f01, f23
        else:
            eta, fa, fb = -1, f12, f30
        if fa == fb:
            continue
        i, j = index[fa], index[fb]
        g[i][j] -= eta
        g[j][i] -= eta
        g[i][i] += eta
        g[j][j] += eta
    return g


def determinant(d: Diagram) -> int:
    """``|det|`` of the Goeritz matrix with one row and column struck out."""
    g = goeritz_matrix(d)
    minor = [row[1:] for row in g[1:]]
    return abs(_bareiss_det(minor))


@dataclass(frozen=True)
class Fingerprint:
    determinant: int
    jones: LaurentPoly

    def to_json(self) -> dict:
        return {"determinant": self.determinant, "jones": self.jones.to_json()}

    @classmethod
    def from_json(cls, data: Mapping) -> "Fingerprint":
        return cls(int(data["determinant"]), LaurentPoly.from_json(data["jones"]))

    def mirror(self) -> "Fingerprint":
        return Fingerprint(self.determinant, self.jones.invert_variable())

    def is_unknot(self) -> bool:
        return self.determinant == 1 and self.jones == LaurentPoly.one("t")


UNKNOT = Fingerprint(1, LaurentPoly.one("t"))


@lru_cache(maxsize=4096)
def _fingerprint_cached(d: Diagram) -> Fingerprint:
    return Fingerprint(determinant(d), jones(d))


def fingerprint(d: Diagram) -> Fingerprint:
    return _fingerprint_cached(Diagram(d.code, d.signs))


def torus_jones(p: int, q: int) -> LaurentPoly:
    """Closed form for the positive ``(p, q)`` torus knot (``gcd(p, q) = 1``).

    ``t^((p-1)(q-1)/2) (1 - t^(p+1) - t^(q+1) + t^(p+q)) / (1 - t^2)``.
    """
    num = {0: 1}
    for e, c in ((p + 1, -1), (q + 1, -1), (p + q, 1)):
        num[e] = num.get(e, 0) + c
    top = max(num)
    quo = {}
    for i in range(top - 1):
        quo[i] = num.get(i, 0) + quo.get(i - 2, 0)
    shift = (p - 1) * (q - 1) // 2
    v = LaurentPoly({e + shift: c for e, c in quo.items()}, "t")
    check = LaurentPoly({e + shift: c for e, c in num.items()}, "t")
    if v * LaurentPoly({0: 1, 2: -1}, "t") != check:
        raise DiagramError(f"torus formula does not divide for ({p}, {q})")
    return v


def torus_fingerprint(p: int, q: int, mirror: bool = False) -> Fingerprint:
    v = torus_jones(p, q)
    fp = Fingerprint(abs(int(v.evaluate(-1))), v)
    return fp.mirror() if mirror else fp
