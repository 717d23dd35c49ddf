"""Planar drawings of diagrams and their lift to polygonal knots.

Knots are drawn as closed braids on an integer grid.  Strand levels are
``y = 1 .. s``; generator ``j`` occupies ``2j <= x <= 2j + 2`` and makes the
strands on levels ``i`` and ``i + 1`` swap along two diagonals that cross at
``(2j + 1, i + 1/2)``.  Closing strands loop back over the top as nested
rectangles, so every drawing runs counterclockwise with a vertical "port"
on its far right (going up) and far left (going down).  Connected sums
splice the right port of one drawing into the left port of the next.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import ConstructionError, NonGeneric
from .geom import GenericityReport, PolyKnot, make_polyknot, scan_planar

Braid = tuple[int, tuple[int, ...]]  # (strand count, generators as signed levels)


@dataclass(frozen=True)
class PlanarCurve:
    """Closed planar polyline with integer/rational vertices."""

    points: tuple[tuple[Fraction, Fraction], ...]

    def translated(self, dx, dy=0) -> "PlanarCurve":
        return PlanarCurve(tuple((x + dx, y + dy) for x, y in self.points))

    def xmin(self):
        return min(p[0] for p in self.points)

    def xmax(self):
        return max(p[0] for p in self.points)


def braid_closure(strands: int, word: Sequence[int]) -> PlanarCurve:
    """Planar drawing of the closure of ``word`` (no over/under data yet).

    The braid permutation must be a single cycle so the closure is a knot.
    """
    if strands < 1:
        raise ConstructionError("a braid needs at least one strand")
    for g in word:
        if g == 0 or abs(g) >= strands:
            raise ConstructionError(f"generator {g} invalid on {strands} strands")
    length = len(word)
    F = Fraction
    pts = []
    pos = 1
    visited = set()
    while pos not in visited:
        visited.add(pos)
        p = pos
        for j, g in enumerate(word):
            i = abs(g)
            pts.append((F(2 * j), F(p)))
            if p == i:
                p = i + 1
            elif p == i + 1:
                p = i
        # closing loop back to the start of the braid, nested by level
        depth = strands + 1 - p
        top = 2 * strands + 1 - p
        pts += [(F(2 * length), F(p)), (F(2 * length + depth), F(p)),
                (F(2 * length + depth), F(top)), (F(-depth), F(top)), (F(-depth), F(p))]
        pos = p
    if len(visited) != strands:
        raise ConstructionError("braid closure has more than one component")
    return PlanarCurve(_dedupe(pts))


def _dedupe(pts):
    out = []
    for p in pts:
        if not out or out[-1] != p:
            out.append(p)
    while len(out) > 1 and out[0] == out[-1]:
        out.pop()
    return tuple(out)


def _port(curve: PlanarCurve, side: str) -> int:
    """Index ``i`` such that segment ``i -> i+1`` is the extreme vertical port."""
    pts = curve.points
    n = len(pts)
    x = curve.xmax() if side == "right" else curve.xmin()
    hits = [i for i in range(n) if pts[i][0] == x and pts[(i + 1) % n][0] == x]
    on_line = [i for i in range(n) if pts[i][0] == x]
    if len(hits) != 1 or len(on_line) != 2:
        raise ConstructionError(f"drawing has no unique {side} port")
    i = hits[0]
    going_up = pts[(i + 1) % n][1] > pts[i][1]
    if going_up != (side == "right"):
        raise ConstructionError(f"{side} port runs the wrong way")
    return i


def planar_sum(a: PlanarCurve, b: PlanarCurve, gap: int = 2) -> PlanarCurve:
    """Splice ``b`` to the right of ``a`` through horizontal bridges."""
    ia = _port(a, "right")
    b = b.translated(a.xmax() + gap - b.xmin())
    ib = _port(b, "left")
    n, m = len(a.points), len(b.points)
    # rotate so each port is the closing segment last -> first
    ra = a.points[ia + 1:] + a.points[:ia + 1]
    rb = b.points[ib + 1:] + b.points[:ib + 1]
    xa, a_lo, a_hi = ra[-1][0], ra[-1][1], ra[0][1]
    xb, b_lo, b_hi = rb[0][0], rb[0][1], rb[-1][1]
    lo, hi = max(a_lo, b_lo), min(a_hi, b_hi)
    if not lo < hi:
        raise ConstructionError("ports do not overlap vertically")
    pts = list(ra) + [(xa, lo), (xb, lo)] + list(rb) + [(xb, hi), (xa, hi)]
    return PlanarCurve(_dedupe(pts))


def chain_sum(curves: Sequence[PlanarCurve]) -> PlanarCurve:
    out = curves[0]
    for c in curves[1:]:
        out = planar_sum(out, c)
    return out


def embed(curve: PlanarCurve, signs: Sequence[int], heights: Mapping[int, tuple],
          baseline) -> PolyKnot:
    """Lift a planar drawing to 3-space with prescribed crossing heights.

    Crossing ids are the lexicographic order of crossing positions, matching
    :func:`knotmaps.geom.project_to_diagram`.  ``signs[c]`` is the sign the
    crossing must have when its over strand sits at ``heights[c][0]`` and its
    under strand at ``heights[c][1]``.  Each strand is flattened to its height
    on a short piece around the crossing; all original vertices sit at
    ``baseline``.
    """
    pts = curve.points
    n = len(pts)
    crossings, violations = scan_planar(pts)
    if violations:
        raise NonGeneric("planar drawing is not generic",
                         GenericityReport(False, len(crossings), tuple(violations)))
    crossings.sort(key=lambda c: c.position)
    if len(signs) != len(crossings):
        raise ConstructionError(f"drawing has {len(crossings)} crossings, {len(signs)} signs given")
    baseline = Fraction(baseline)
    per_segment: dict[int, list[tuple[Fraction, Fraction]]] = {}
    for cid, c in enumerate(crossings):
        h_over, h_under = (Fraction(h) for h in heights[cid])
        da = (pts[(c.seg_a + 1) % n][0] - pts[c.seg_a][0], pts[(c.seg_a + 1) % n][1] - pts[c.seg_a][1])
        db = (pts[(c.seg_b + 1) % n][0] - pts[c.seg_b][0], pts[(c.seg_b + 1) % n][1] - pts[c.seg_b][1])
        a_over_sign = 1 if da[0] * db[1] - da[1] * db[0] > 0 else -1
        a_is_over = a_over_sign == signs[cid]
        per_segment.setdefault(c.seg_a, []).append((c.t_a, h_over if a_is_over else h_under))
        per_segment.setdefault(c.seg_b, []).append((c.t_b, h_under if a_is_over else h_over))
    verts = []
    for i in range(n):
        p, q = pts[i], pts[(i + 1) % n]
        verts.append((p[0], p[1], baseline))
        marks = sorted(per_segment.get(i, ()))
        if not marks:
            continue
        params = [Fraction(0)] + [t for t, _ in marks] + [Fraction(1)]
        delta = min(b - a for a, b in zip(params, params[1:])) / 4
        for t, h in marks:
            for tt in (t - delta, t + delta):
                verts.append((p[0] + tt * (q[0] - p[0]), p[1] + tt * (q[1] - p[1]), h))
    return make_polyknot(verts)
