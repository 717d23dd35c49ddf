"""Exact piecewise-linear interval dynamics and tent-map symbolic coding.

Eventually periodic sequences are stored as ``prefix`` plus a non-empty
``tail`` repeated forever.  Index ``i`` (0-based) of a sequence corresponds
to the time ``n = i + 1`` used when talking about ``f^(n-1)``.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import ClassVar, Sequence

from .errors import DynamicsError, EscapesUnitInterval, HitsHalf, NonPositiveSlope
from .geom import as_rat

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class PLMap1D:
    """Continuous piecewise-affine map of the line.

    ``pieces[i] = (slope, intercept)`` holds on the closed interval between
    ``breakpoints[i-1]`` and ``breakpoints[i]`` (unbounded at the ends).
    """

    breakpoints: tuple[Fraction, ...]
    pieces: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        if len(self.pieces) != len(self.breakpoints) + 1:
            raise DynamicsError("need exactly one more piece than breakpoints")
        if any(b >= c for b, c in zip(self.breakpoints, self.breakpoints[1:])):
            raise DynamicsError("breakpoints must be strictly increasing")
        for b, (s0, c0), (s1, c1) in zip(self.breakpoints, self.pieces, self.pieces[1:]):
            if s0 * b + c0 != s1 * b + c1:
                raise DynamicsError(f"map is discontinuous at {b}")

    def piece_index(self, z) -> int:
        return bisect_right(self.breakpoints, z)

    def __call__(self, z) -> Fraction:
        s, c = self.pieces[self.piece_index(z)]
        return s * z + c

    def to_json(self) -> dict:
        return {"breakpoints": [str(b) for b in self.breakpoints],
                "pieces": [[str(s), str(c)] for s, c in self.pieces]}

    @classmethod
    def from_json(cls, data: dict) -> "PLMap1D":
        return make_pl(data["breakpoints"], data["pieces"])


def make_pl(breakpoints: Sequence, pieces: Sequence[Sequence]) -> PLMap1D:
    return PLMap1D(tuple(as_rat(b) for b in breakpoints),
                   tuple((as_rat(s), as_rat(c)) for s, c in pieces))


def identity_map() -> PLMap1D:
    return make_pl([], [(1, 0)])


def abs_map() -> PLMap1D:
    return make_pl([0], [(-1, 0), (1, 0)])


def pl_from_values(xs: Sequence, ys: Sequence) -> PLMap1D:
    """Interpolate through ``(xs[i], ys[i])``, extending the end slopes."""
    xs = [as_rat(x) for x in xs]
    ys = [as_rat(y) for y in ys]
    if len(xs) < 2 or len(xs) != len(ys):
        raise DynamicsError("need at least two interpolation nodes")
    slopes = [(y1 - y0) / (x1 - x0) for x0, x1, y0, y1 in zip(xs, xs[1:], ys, ys[1:])]
    pieces = [(s, y0 - s * x0) for s, x0, y0 in zip(slopes, xs, ys)]
    pieces = [pieces[0]] + pieces + [pieces[-1]]
    return PLMap1D(tuple(xs), tuple(pieces))


def make_tent(mu) -> PLMap1D:
    """``t_mu(z) = mu z`` for ``z <= 1/2`` and ``-mu z + mu`` above."""
    mu = as_rat(mu)
    if mu <= 0:
        raise NonPositiveSlope(f"tent slope must be positive, got {mu}")
    return PLMap1D((HALF,), ((mu, Fraction(0)), (-mu, mu)))


def iterate(f: PLMap1D, x, n: int) -> Fraction:
    if n < 0:
        raise DynamicsError("iteration count must be non-negative")
    x = as_rat(x)
    for _ in range(n):
        x = f(x)
    return x


def trajectory(f: PLMap1D, x, n: int) -> list[Fraction]:
    """``[x, f(x), ..., f^n(x)]``."""
    out = [as_rat(x)]
    for _ in range(n):
        out.append(f(out[-1]))
    return out


# ---------------------------------------------------------------------------
# eventually periodic sequences

@dataclass(frozen=True)
class EventuallyPeriodic:
    prefix: tuple
    tail: tuple

    symbols: ClassVar[tuple] = ()
    letters: ClassVar[str] = ""

    def __post_init__(self):
        if not self.tail:
            raise DynamicsError("periodic tail must be non-empty")
        bad = [s for s in self.prefix + self.tail if s not in self.symbols]
        if bad:
            raise DynamicsError(f"symbols {bad} not in alphabet {self.symbols}")

    def __getitem__(self, i: int):
        if i < len(self.prefix):
            return self.prefix[i]
        return self.tail[(i - len(self.prefix)) % len(self.tail)]

    def first(self, count: int) -> tuple:
        return tuple(self[i] for i in range(count))

    def shift(self):
        """Drop the first symbol."""
        if self.prefix:
            return type(self)(self.prefix[1:], self.tail)
        return type(self)((), self.tail[1:] + self.tail[:1])

    @property
    def period(self) -> int:
        return len(self.tail)

    def text(self) -> str:
        enc = dict(zip(self.symbols, self.letters))
        return "".join(enc[s] for s in self.prefix) + "|" + "".join(enc[s] for s in self.tail)

    @classmethod
    def parse(cls, text: str):
        if text.count("|") != 1:
            raise DynamicsError(f"expected 'prefix|tail', got {text!r}")
        dec = dict(zip(cls.letters, cls.symbols))
        head, tail = text.split("|")
        try:
            return cls(tuple(dec[ch] for ch in head), tuple(dec[ch] for ch in tail))
        except KeyError as exc:
            raise DynamicsError(f"bad symbol {exc.args[0]!r} in {text!r}") from None

    def __str__(self):
        return self.text()


class Itinerary(EventuallyPeriodic):
    symbols = (0, 1)
    letters = "01"


class SignSeq(EventuallyPeriodic):
    symbols = (-1, 1)
    letters = "-+"


def itinerary_of(mu, x, depth: int) -> tuple[int, ...]:
    """Side of ``1/2`` for ``x, t(x), ..., t^(depth-1)(x)``."""
    f = make_tent(mu)
    x = as_rat(x)
    word = []
    for n in range(depth):
        if not 0 <= x <= 1:
            raise EscapesUnitInterval(f"iterate {n} = {x} left [0, 1]")
        if x == HALF:
            raise HitsHalf(f"iterate {n} equals 1/2")
        word.append(0 if x < HALF else 1)
        x = f(x)
    return tuple(word)


def _branch(mu: Fraction, symbol: int) -> tuple[Fraction, Fraction]:
    # inverse branches of the tent map as affine maps w -> a w + b
    return (1 / mu, Fraction(0)) if symbol == 0 else (-1 / mu, Fraction(1))


def _compose(word, mu) -> tuple[Fraction, Fraction]:
    """Affine map ``Phi_{w0} o Phi_{w1} o ... o Phi_{w_last}``."""
    a, b = Fraction(1), Fraction(0)
    for s in reversed(word):
        p, q = _branch(mu, s)
        a, b = p * a, p * b + q
    return a, b


def point_from_itinerary(mu, it: Itinerary) -> Fraction:
    """The unique point of the tent map's invariant Cantor set with itinerary ``it``."""
    mu = as_rat(mu)
    if mu <= 2:
        raise DynamicsError("symbolic coding needs mu > 2")
    a, b = _compose(it.tail, mu)
    y = b / (1 - a)
    a, b = _compose(it.prefix, mu)
    return a * y + b


def realizing_pair(mu, psi: SignSeq) -> tuple[Fraction, Fraction]:
    """``(x, y)`` with ``sign(t^(n-1)(x) - t^(n-1)(y)) = psi(n)`` for every ``n``.

    ``x`` sits above ``1/2`` exactly when ``psi`` is ``+1`` and ``y`` on the
    opposite side, so the iterates are always separated by ``1/2``.
    """
    up = {1: 1, -1: 0}
    down = {1: 0, -1: 1}
    u = Itinerary(tuple(up[s] for s in psi.prefix), tuple(up[s] for s in psi.tail))
    v = Itinerary(tuple(down[s] for s in psi.prefix), tuple(down[s] for s in psi.tail))
    return point_from_itinerary(mu, u), point_from_itinerary(mu, v)


def sign_sequence(f: PLMap1D, x, y, depth: int) -> tuple[int, ...]:
    """Observed signs of ``f^(n-1)(x) - f^(n-1)(y)``; 0 marks a collision."""
    x, y = as_rat(x), as_rat(y)
    out = []
    for _ in range(depth):
        out.append((x > y) - (x < y))
        x, y = f(x), f(y)
    return tuple(out)
