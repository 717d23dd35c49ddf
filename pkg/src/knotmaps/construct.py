"""Knots whose images under a fixed map realize prescribed knot types.

Both constructions draw a connected sum of catalog diagrams in the plane,
then choose the heights of the two strands at every crossing:

* the fold construction dips the under strand below ``z = 0`` exactly at
  the unknotting crossings, so ``|z|`` flips those crossings and nothing else;
* the tent construction gives every crossing a realizing pair of a sign
  sequence, so the over/under order at step ``n`` is known for all ``n``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .catalog import KnotTypeSpec
from .diagram import Diagram, change_crossings
from .dynamics import EventuallyPeriodic, PLMap1D, SignSeq, make_tent, realizing_pair
from .errors import ConstructionError, DuplicateFingerprints, HeightCollision
from .geom import PolyKnot, as_rat, project_to_diagram
from .layout import chain_sum, embed


@dataclass(frozen=True)
class HeightPlan:
    """Crossing id -> ``(over_height, under_height)`` plus a family tag.

    Family 0 keeps its crossing forever, family 1 belongs to the first
    summand, family ``i >= 2`` to summand ``i``.
    """

    heights: Mapping[int, tuple[Fraction, Fraction]]
    families: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        for c, (ho, hu) in self.heights.items():
            if ho == hu:
                raise HeightCollision(f"crossing {c} has equal heights", c)
        if self.families and set(self.families) != set(self.heights):
            raise ConstructionError("family tags must cover exactly the planned crossings")

    def swapped(self, c: int) -> "HeightPlan":
        """Copy with the two heights at crossing ``c`` exchanged."""
        h = dict(self.heights)
        ho, hu = h[c]
        h[c] = (hu, ho)
        return HeightPlan(h, dict(self.families))

    def to_json(self) -> dict:
        return {"heights": {str(c): [str(ho), str(hu)] for c, (ho, hu) in sorted(self.heights.items())},
                "families": {str(c): t for c, t in sorted(self.families.items())}}

    @classmethod
    def from_json(cls, data: dict) -> "HeightPlan":
        heights = {int(c): (as_rat(ho), as_rat(hu)) for c, (ho, hu) in data["heights"].items()}
        families = {int(c): int(t) for c, t in data.get("families", {}).items()}
        return cls(heights, families)


def sign_tracked_diagram(base: Diagram, plan: HeightPlan, f: PLMap1D, n: int) -> Diagram:
    """Diagram of the ``n``-th z-lift image read from crossing heights alone.

    Sound because a z-lift keeps the projection, so the knot type of the
    image only depends on which strand is higher over each crossing.
    """
    missing = set(range(base.n)) - set(plan.heights)
    if missing:
        raise ConstructionError(f"plan misses crossings {sorted(missing)}")
    flip = []
    for c in range(base.n):
        ho, hu = plan.heights[c]
        for _ in range(n):
            ho, hu = f(ho), f(hu)
        if ho == hu:
            raise HeightCollision(f"strands meet over crossing {c} at step {n}", c)
        if ho < hu:
            flip.append(c)
    return change_crossings(base, flip)


def _summand_layout(specs: Sequence[KnotTypeSpec], changed: Sequence[Iterable[int]]):
    """Planar drawing of the sum plus per-summand signs and id offsets."""
    curve = chain_sum([s.curve() for s in specs])
    signs = []
    offsets = []
    for spec, ch in zip(specs, changed):
        offsets.append(len(signs))
        ch = set(ch)
        signs += [-v if i in ch else v for i, v in enumerate(spec.signs)]
    return curve, signs, offsets


# ---------------------------------------------------------------------------
# fold

@dataclass(frozen=True)
class FoldBuild:
    knot: PolyKnot
    diagram: Diagram
    flip_set: frozenset  # crossings the fold map changes
    plan: HeightPlan
    first: KnotTypeSpec
    second: KnotTypeSpec


def build_fold(k1: KnotTypeSpec, k2: KnotTypeSpec, eps=1) -> FoldBuild:
    eps = as_rat(eps)
    if eps <= 0:
        raise ConstructionError("eps must be positive")
    curve, signs, offsets = _summand_layout([k1, k2], [(), k2.unknotting_set])
    flip = frozenset(set(k1.unknotting_set) | {offsets[1] + c for c in k2.unknotting_set})
    heights = {c: ((eps, -2 * eps) if c in flip else (eps, eps / 2)) for c in range(len(signs))}
    families = {c: (1 if c in flip else 0) for c in heights}
    plan = HeightPlan(heights, families)
    k = embed(curve, signs, heights, eps)
    return FoldBuild(k, project_to_diagram(k), flip, plan, k1, k2)


def fold_construction(k1: KnotTypeSpec, k2: KnotTypeSpec, eps=1) -> PolyKnot:
    """Knot ``k`` of type ``k1`` whose image under ``|z|`` has type ``k2``."""
    return build_fold(k1, k2, eps).knot


# ---------------------------------------------------------------------------
# tent

class Schedule(EventuallyPeriodic):
    """Eventually periodic sequence of knot names; text form ``"a,b|c"``."""

    def __post_init__(self):
        if not self.tail:
            raise ConstructionError("schedule tail must be non-empty")

    def text(self) -> str:
        return ",".join(self.prefix) + "|" + ",".join(self.tail)

    @classmethod
    def parse(cls, text: str) -> "Schedule":
        if text.count("|") != 1:
            raise ConstructionError(f"expected 'prefix|tail', got {text!r}")
        head, tail = text.split("|")
        split = lambda s: tuple(x.strip() for x in s.split(",") if x.strip())
        return cls(split(head), split(tail))


@dataclass(frozen=True)
class TentBuild:
    knot: PolyKnot
    diagram: Diagram
    plan: HeightPlan
    order: tuple[KnotTypeSpec, ...]  # summands, first one realized at step 0
    phi: Schedule
    mu: Fraction
    summand_offsets: tuple[int, ...]

    @property
    def map(self) -> PLMap1D:
        return make_tent(self.mu)

    def expected(self, n: int) -> KnotTypeSpec:
        """Type prescribed for orbit step ``n`` (0-based)."""
        return next(s for s in self.order if s.name == self.phi[n])


def _indicator(phi: Schedule, name: str) -> SignSeq:
    v = lambda x: 1 if x == name else -1
    return SignSeq(tuple(v(x) for x in phi.prefix), tuple(v(x) for x in phi.tail))


def build_tent(types: Sequence[KnotTypeSpec], phi: Schedule, mu=3, baseline=Fraction(3, 4)) -> TentBuild:
    mu = as_rat(mu)
    if mu <= 2:
        raise ConstructionError("the tent map is switching only for mu > 2")
    if not types:
        raise ConstructionError("need at least one knot type")
    seen = {}
    for t in types:
        if t.fingerprint in seen:
            raise DuplicateFingerprints(f"{t.name} and {seen[t.fingerprint]} share a fingerprint")
        seen[t.fingerprint] = t.name
    by_name = {t.name: t for t in types}
    unknown = set(phi.prefix + phi.tail) - set(by_name)
    if unknown:
        raise ConstructionError(f"schedule uses types not supplied: {sorted(unknown)}")
    first = by_name[phi[0]]
    order = [first] + [t for t in types if t is not first]
    changed = [()] + [t.unknotting_set for t in order[1:]]
    curve, signs, offsets = _summand_layout(order, changed)

    families = {c: 0 for c in range(len(signs))}
    for i, (spec, off) in enumerate(zip(order, offsets), start=1):
        for c in spec.unknotting_set:
            families[off + c] = i
    pairs = {0: realizing_pair(mu, SignSeq((), (1,)))}
    for i, spec in enumerate(order, start=1):
        pairs[i] = realizing_pair(mu, _indicator(phi, spec.name))
    heights = {}
    for c, fam in families.items():
        x, y = pairs[fam]
        heights[c] = (x, y) if fam <= 1 else (y, x)
    plan = HeightPlan(heights, families)
    k = embed(curve, signs, heights, baseline)
    return TentBuild(k, project_to_diagram(k), plan, tuple(order), phi, mu, tuple(offsets))


def tent_construction(types: Sequence[KnotTypeSpec], phi: Schedule, mu=3) -> PolyKnot:
    """Knot whose ``n``-th tent-lift image has type ``phi[n]`` for every ``n``."""
    return build_tent(types, phi, mu).knot
