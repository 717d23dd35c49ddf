"""Built-in knot types, each drawn as a closed braid with an unknotting set.

Crossing ids of a catalog diagram are the positions of the braid letters,
because the drawing puts one letter per column and ids follow ``x``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .diagram import Diagram
from .errors import UnknownKnotName
from .geom import PolyKnot, project_to_diagram
from .invariants import Fingerprint, fingerprint
from .layout import PlanarCurve, braid_closure, embed


@dataclass(frozen=True)
class KnotTypeSpec:
    name: str
    strands: int
    word: tuple[int, ...]
    unknotting_set: frozenset
    diagram: Diagram
    fingerprint: Fingerprint

    @property
    def signs(self) -> tuple[int, ...]:
        return tuple(1 if g > 0 else -1 for g in self.word)

    def curve(self) -> PlanarCurve:
        return braid_closure(self.strands, self.word)

    def polyknot(self, over=1, under=-1, baseline=0) -> PolyKnot:
        """Standard embedding: flat over/under pieces at each crossing."""
        return embed(self.curve(), self.signs, {c: (over, under) for c in range(len(self.word))},
                     baseline)


# name -> (strands, braid word, unknotting set); sets found by exhaustive
# search and certified by simplify in the tests
_BRAIDS = {
    "unknot": (1, (), ()),
    "trefoil_r": (2, (1, 1, 1), (0,)),
    "trefoil_l": (2, (-1, -1, -1), (0,)),
    "figure8": (3, (1, -2, 1, -2), (0,)),
    "5_1": (2, (1, 1, 1, 1, 1), (0, 1)),
    # six-crossing braid diagram of 5_2 (the minimal diagram is not a short braid)
    "5_2": (3, (1, 1, 1, 2, -1, 2), (0,)),
}


def names() -> list[str]:
    return list(_BRAIDS)


@lru_cache(maxsize=None)
def catalog_lookup(name: str) -> KnotTypeSpec:
    if name not in _BRAIDS:
        raise UnknownKnotName(f"unknown knot {name!r}; known: {', '.join(_BRAIDS)}")
    strands, word, unknot = _BRAIDS[name]
    signs = tuple(1 if g > 0 else -1 for g in word)
    curve = braid_closure(strands, word)
    k = embed(curve, signs, {c: (Fraction(1), Fraction(-1)) for c in range(len(word))}, 0)
    d = project_to_diagram(k)
    return KnotTypeSpec(name, strands, word, frozenset(unknot), Diagram(d.code, d.signs),
                        fingerprint(d))


def catalog() -> list[KnotTypeSpec]:
    return [catalog_lookup(n) for n in _BRAIDS]


def identify(fp: Fingerprint):
    """Catalog name with this fingerprint, or ``None``."""
    for spec in catalog():
        if spec.fingerprint == fp:
            return spec.name
    return None
