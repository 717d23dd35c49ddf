"""Exact rational kernel for closed polylines in 3-space.

Every coordinate is a :class:`fractions.Fraction`; no predicate here ever
rounds.  The projection is ``p(x, y, z) = (x, y)`` and the height is ``z``.

Crossing sign convention (used project-wide): a crossing is ``+1`` when the
z-component of ``over_direction x under_direction`` is positive, i.e. the
usual right-handed crossing.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .errors import DegenerateVertex, NonGeneric, NotSimple, VerticalSegment

Rat = Fraction
Point2 = tuple[Fraction, Fraction]
Point3 = tuple[Fraction, Fraction, Fraction]


def as_rat(value) -> Fraction:
    """Coerce ints, strings like ``"3/4"`` and Fractions to Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not accepted as exact coordinates")
    return Fraction(value)


def point3(x, y, z) -> Point3:
    return (as_rat(x), as_rat(y), as_rat(z))


def _sub2(a, b):
    return (a[0] - b[0], a[1] - b[1])


def _cross2(a, b):
    return a[0] * b[1] - a[1] * b[0]


def _dot2(a, b):
    return a[0] * b[0] + a[1] * b[1]


def _sign(v) -> int:
    return (v > 0) - (v < 0)


@dataclass(frozen=True)
class PolyKnot:
    """Closed oriented polyline; vertex ``i`` joins vertex ``i + 1`` cyclically.

    Build through :func:`make_polyknot` to get validation.
    """

    vertices: tuple[Point3, ...]

    def __len__(self) -> int:
        return len(self.vertices)

    def segment(self, i: int) -> tuple[Point3, Point3]:
        n = len(self.vertices)
        return self.vertices[i], self.vertices[(i + 1) % n]

    def rotated(self, shift: int) -> "PolyKnot":
        vs = self.vertices
        shift %= len(vs)
        return PolyKnot(vs[shift:] + vs[:shift])

    def reversed(self) -> "PolyKnot":
        return PolyKnot(tuple(reversed(self.vertices)))

    def projection(self) -> list[Point2]:
        return [(v[0], v[1]) for v in self.vertices]


# ---------------------------------------------------------------------------
# segment predicates

def intersect_segments_2d(p1, p2, q1, q2):
    """Exact intersection of planar segments ``p1p2`` and ``q1q2``.

    Returns ``None``, ``("point", t, u)`` with the parameters of the common
    point on each segment, or ``("overlap", t_lo, t_hi)`` for a collinear
    overlap of positive length (parameters along ``p1p2``).
    """
    r = _sub2(p2, p1)
    s = _sub2(q2, q1)
    qp = _sub2(q1, p1)
    denom = _cross2(r, s)
    if denom != 0:
        t = _cross2(qp, s) / denom
        u = _cross2(qp, r) / denom
        if 0 <= t <= 1 and 0 <= u <= 1:
            return ("point", t, u)
        return None
    if _cross2(qp, r) != 0:
        return None
    rr = _dot2(r, r)
    t0 = _dot2(qp, r) / rr
    t1 = _dot2(_sub2(q2, p1), r) / rr
    lo = max(Fraction(0), min(t0, t1))
    hi = min(Fraction(1), max(t0, t1))
    if lo > hi:
        return None
    if lo == hi:
        # touching collinear segments: recover the parameter on q
        ss = _dot2(s, s)
        pt = (p1[0] + lo * r[0], p1[1] + lo * r[1])
        u = _dot2(_sub2(pt, q1), s) / ss
        return ("point", lo, u)
    return ("overlap", lo, hi)


def _lerp(a, b, t):
    return tuple(x + t * (y - x) for x, y in zip(a, b))


def _candidate_pairs(points2d: Sequence[Point2]) -> Iterable[tuple[int, int]]:
    """Segment index pairs ``i < j`` whose bounding boxes may meet.

    Uniform-grid broad phase on float boxes padded outward; the exact test
    is always run afterwards, so the padding only has to be conservative.
    """
    n = len(points2d)
    if n <= 64:
        yield from combinations(range(n), 2)
        return
    boxes = []
    total = 0.0
    for i in range(n):
        a, b = points2d[i], points2d[(i + 1) % n]
        ax, ay, bx, by = float(a[0]), float(a[1]), float(b[0]), float(b[1])
        x0, x1 = min(ax, bx), max(ax, bx)
        y0, y1 = min(ay, by), max(ay, by)
        pad = 1e-9 * (1.0 + abs(x0) + abs(x1) + abs(y0) + abs(y1))
        boxes.append((x0 - pad, y0 - pad, x1 + pad, y1 + pad))
        total += max(x1 - x0, y1 - y0)
    cell = max(total / n, 1e-12) * 2.0
    grid = defaultdict(list)
    for i, (x0, y0, x1, y1) in enumerate(boxes):
        for gx in range(math.floor(x0 / cell), math.floor(x1 / cell) + 1):
            for gy in range(math.floor(y0 / cell), math.floor(y1 / cell) + 1):
                grid[(gx, gy)].append(i)
    seen = set()
    for members in grid.values():
        for a, b in combinations(members, 2):
            pair = (a, b) if a < b else (b, a)
            if pair not in seen:
                seen.add(pair)
    yield from sorted(seen)


def _adjacent(i: int, j: int, n: int) -> bool:
    return j == i + 1 or (i == 0 and j == n - 1)


# ---------------------------------------------------------------------------
# construction and validation

def make_polyknot(vertices: Sequence[Sequence]) -> PolyKnot:
    """Validate and wrap a closed polyline.

    Raises :class:`DegenerateVertex` for repeated consecutive vertices,
    :class:`VerticalSegment` for a segment whose projection is a point and
    :class:`NotSimple` if two segments meet anywhere except at a shared
    endpoint.
    """
    vs = tuple(point3(*v) for v in vertices)
    n = len(vs)
    if n < 3:
        raise DegenerateVertex(f"a closed polyline needs at least 3 vertices, got {n}")
    for i in range(n):
        a, b = vs[i], vs[(i + 1) % n]
        if a == b:
            raise DegenerateVertex(f"vertex {i} repeats at {a}")
        if a[0] == b[0] and a[1] == b[1]:
            raise VerticalSegment(f"segment {i} is vertical at {(a[0], a[1])}")
    witness = find_self_intersection(vs)
    if witness is not None:
        raise NotSimple(f"segments {witness[0]} and {witness[1]} intersect", witness)
    return PolyKnot(vs)


def _segment_pair_meets(vs, i, j) -> bool:
    """Exact 3D test for segments ``i`` and ``j`` of a closed polyline."""
    n = len(vs)
    p1, p2 = vs[i], vs[(i + 1) % n]
    q1, q2 = vs[j], vs[(j + 1) % n]
    if i > j:
        i, j = j, i
        p1, p2, q1, q2 = q1, q2, p1, p2
    if _adjacent(i, j, n):
        # shared vertex; they meet elsewhere only by folding back in 3D
        if i == 0 and j == n - 1:
            d1 = tuple(b - a for a, b in zip(p1, p2))
            d2 = tuple(b - a for a, b in zip(q2, q1))
        else:
            d1 = tuple(b - a for a, b in zip(p2, p1))
            d2 = tuple(b - a for a, b in zip(q1, q2))
        cross = (d1[1] * d2[2] - d1[2] * d2[1], d1[2] * d2[0] - d1[0] * d2[2],
                 d1[0] * d2[1] - d1[1] * d2[0])
        return cross == (0, 0, 0) and sum(a * b for a, b in zip(d1, d2)) > 0
    hit = intersect_segments_2d(p1[:2], p2[:2], q1[:2], q2[:2])
    if hit is None:
        return False
    if hit[0] == "point":
        _, t, u = hit
        return p1[2] + t * (p2[2] - p1[2]) == q1[2] + u * (q2[2] - q1[2])
    _, lo, hi = hit
    diffs = []
    for t in (lo, hi):
        pt = _lerp(p1, p2, t)
        s = _sub2(q2[:2], q1[:2])
        u = _dot2(_sub2(pt[:2], q1[:2]), s) / _dot2(s, s)
        diffs.append(pt[2] - (q1[2] + u * (q2[2] - q1[2])))
    return diffs[0] == 0 or diffs[1] == 0 or _sign(diffs[0]) != _sign(diffs[1])


def brute_force_self_intersection(vs: Sequence[Point3]):
    """All-pairs reference version of :func:`find_self_intersection`."""
    n = len(vs)
    for i, j in combinations(range(n), 2):
        if _segment_pair_meets(vs, i, j):
            return (i, j)
    return None


def find_self_intersection(vs: Sequence[Point3]):
    """Return ``(i, j)`` for some pair of meeting segments, else ``None``.

    Assumes consecutive vertices are distinct and no segment is vertical.
    Works on the corner skeleton of the projection, so long runs of
    projection-collinear segments (typical of z-lift images) stay cheap.
    """
    vs = tuple(vs)
    n = len(vs)
    sk = _Skeleton([(v[0], v[1]) for v in vs])
    m = len(sk.corners)
    spts = sk.points()
    checked = set()

    def check(i, j):
        key = (min(i, j), max(i, j))
        if key in checked or i == j:
            return None
        checked.add(key)
        return key if _segment_pair_meets(vs, *key) else None

    for a, b in _candidate_pairs(spts):
        p1, p2 = spts[a], spts[(a + 1) % m]
        q1, q2 = spts[b], spts[(b + 1) % m]
        hit = intersect_segments_2d(p1, p2, q1, q2)
        if hit is None:
            continue
        if _adjacent(a, b, m) and hit[0] == "point":
            # meeting only at the shared corner: original neighbours meet there
            continue
        if hit[0] == "overlap" or m <= 3:
            for i in sk.children(a):
                for j in sk.children(b):
                    w = check(i, j)
                    if w:
                        return w
            continue
        _, t, u = hit
        for i in sk.locate(a, t):
            for j in sk.locate(b, u):
                w = check(i, j)
                if w:
                    return w
    return None


def is_simple(k: PolyKnot) -> bool:
    return find_self_intersection(k.vertices) is None


class _Skeleton:
    """Corners of a closed planar polyline, merging straight-through vertices.

    A vertex is dropped when it lies strictly between its neighbours, so
    each skeleton edge is a straight run of original segments traversed
    monotonically.
    """

    def __init__(self, pts: Sequence[Point2]):
        n = len(pts)
        self.pts = pts
        self.n = n
        corners = []
        for i in range(n):
            a, b, c = pts[i - 1], pts[i], pts[(i + 1) % n]
            d1, d2 = _sub2(b, a), _sub2(c, b)
            if not (_cross2(d1, d2) == 0 and _dot2(d1, d2) > 0):
                corners.append(i)
        if len(corners) < 2:
            corners = list(range(n))
        self.corners = corners
        self._params = {}

    def points(self):
        return [self.pts[i] for i in self.corners]

    def span(self, k: int) -> tuple[int, int]:
        m = len(self.corners)
        a, b = self.corners[k], self.corners[(k + 1) % m]
        if b <= a:
            b += self.n
        return a, b

    def children(self, k: int) -> list[int]:
        a, b = self.span(k)
        return [i % self.n for i in range(a, b)]

    def params(self, k: int) -> list[Fraction]:
        if k not in self._params:
            a, b = self.span(k)
            p, q = self.pts[a % self.n], self.pts[b % self.n]
            d = _sub2(q, p)
            dd = _dot2(d, d)
            self._params[k] = [_dot2(_sub2(self.pts[i % self.n], p), d) / dd
                               for i in range(a, b + 1)]
        return self._params[k]

    def locate(self, k: int, t) -> list[int]:
        """Original segment(s) of skeleton edge ``k`` containing parameter ``t``."""
        from bisect import bisect_left, bisect_right
        ps = self.params(k)
        kids = self.children(k)
        lo = max(bisect_left(ps, t) - 1, 0)
        hi = min(bisect_right(ps, t), len(kids))
        return kids[lo:hi] or kids[-1:]

    def refine(self, k: int, t):
        """``(segment, local parameter)`` for a point strictly inside one child."""
        ps = self.params(k)
        kids = self.children(k)
        from bisect import bisect_right
        idx = min(max(bisect_right(ps, t) - 1, 0), len(kids) - 1)
        t0, t1 = ps[idx], ps[idx + 1]
        return kids[idx], (t - t0) / (t1 - t0)


# ---------------------------------------------------------------------------
# projections

@dataclass(frozen=True)
class Violation:
    kind: str  # "vertex_crossing" | "overlapping_segments" | "triple_point"
    segments: tuple[int, ...]
    at: Point2


@dataclass(frozen=True)
class PlanarCrossing:
    position: Point2
    seg_a: int
    t_a: Fraction
    seg_b: int
    t_b: Fraction


@dataclass(frozen=True)
class GenericityReport:
    ok: bool
    crossings: int
    violations: tuple[Violation, ...]


def scan_planar(points2d: Sequence[Point2]) -> tuple[list[PlanarCrossing], list[Violation]]:
    """All transverse double points of a closed planar polyline, plus violations."""
    points2d = tuple(points2d)
    sk = _Skeleton(points2d)
    spts = sk.points()
    m = len(spts)
    crossings: list[PlanarCrossing] = []
    violations: list[Violation] = []
    for a, b in _candidate_pairs(spts):
        p1, p2 = spts[a], spts[(a + 1) % m]
        q1, q2 = spts[b], spts[(b + 1) % m]
        if _adjacent(a, b, m):
            if a == 0 and b == m - 1:
                d1, d2 = _sub2(p2, p1), _sub2(q1, q2)
                shared = p1
            else:
                d1, d2 = _sub2(p1, p2), _sub2(q2, q1)
                shared = p2
            if _cross2(d1, d2) == 0 and _dot2(d1, d2) > 0:
                violations.append(Violation("overlapping_segments", (sk.corners[a], sk.corners[b]), shared))
            continue
        hit = intersect_segments_2d(p1, p2, q1, q2)
        if hit is None:
            continue
        if hit[0] == "overlap":
            violations.append(Violation("overlapping_segments", (sk.corners[a], sk.corners[b]),
                                        _lerp(p1, p2, hit[1])))
            continue
        _, t, u = hit
        at = _lerp(p1, p2, t)
        sa, sb = sk.locate(a, t), sk.locate(b, u)
        if len(sa) != 1 or len(sb) != 1 or t in (0, 1) or u in (0, 1) \
                or t in sk.params(a) or u in sk.params(b):
            violations.append(Violation("vertex_crossing", (sa[0], sb[0]), at))
            continue
        i, ti = sk.refine(a, t)
        j, tj = sk.refine(b, u)
        crossings.append(PlanarCrossing(at, i, ti, j, tj))
    by_pos = defaultdict(list)
    for c in crossings:
        by_pos[c.position].append(c)
    for pos, group in by_pos.items():
        if len(group) > 1:
            segs = tuple(sorted({s for c in group for s in (c.seg_a, c.seg_b)}))
            violations.append(Violation("triple_point", segs, pos))
    return crossings, violations


def is_generic_projection(k: PolyKnot) -> GenericityReport:
    """Check that ``p(k)`` has only finitely many transverse double points.

    Overlapping segment projections, crossings through vertex images and
    triple points are reported as violations.
    """
    crossings, violations = scan_planar(k.projection())
    return GenericityReport(not violations, len(crossings), tuple(violations))


def subdivide_at_planes(k: PolyKnot, zs: Iterable) -> PolyKnot:
    """Insert a vertex wherever a segment's interior crosses a plane ``z = c``."""
    planes = sorted({as_rat(z) for z in zs})
    if not planes:
        return k
    out = []
    n = len(k.vertices)
    for i in range(n):
        a, b = k.vertices[i], k.vertices[(i + 1) % n]
        out.append(a)
        za, zb = a[2], b[2]
        if za == zb:
            continue
        lo, hi = min(za, zb), max(za, zb)
        inner = [c for c in planes if lo < c < hi]
        if za > zb:
            inner.reverse()
        for c in inner:
            t = (c - za) / (zb - za)
            out.append((a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]), c))
    return PolyKnot(tuple(out))


def _strictly_between(a, b, c) -> bool:
    d1 = tuple(y - x for x, y in zip(a, b))
    d2 = tuple(y - x for x, y in zip(b, c))
    cross = (d1[1] * d2[2] - d1[2] * d2[1], d1[2] * d2[0] - d1[0] * d2[2],
             d1[0] * d2[1] - d1[1] * d2[0])
    return cross == (0, 0, 0) and sum(x * y for x, y in zip(d1, d2)) > 0


def drop_collinear(k: PolyKnot) -> PolyKnot:
    """Remove vertices lying strictly inside the segment joining their neighbours.

    The point set is unchanged, so the result is simple whenever ``k`` is.
    """
    out: list[Point3] = []
    for v in k.vertices:
        out.append(v)
        while len(out) >= 3 and _strictly_between(out[-3], out[-2], out[-1]):
            del out[-2]
    changed = True
    while changed and len(out) > 3:
        changed = False
        if _strictly_between(out[-2], out[-1], out[0]):
            out.pop()
            changed = True
        elif _strictly_between(out[-1], out[0], out[1]):
            out.pop(0)
            changed = True
    return PolyKnot(tuple(out))


# ---------------------------------------------------------------------------
# diagram extraction

@dataclass(frozen=True)
class CrossingDatum:
    id: int
    position: Point2
    over_segment: int
    over_param: Fraction
    under_segment: int
    under_param: Fraction
    sign: int
    over_height: Fraction
    under_height: Fraction


def extract_crossings(k: PolyKnot) -> list[CrossingDatum]:
    """Crossing data of a generic projection, ids ordered by position ``(x, y)``."""
    planar, violations = scan_planar(k.projection())
    if violations:
        raise NonGeneric(f"{len(violations)} projection violation(s)",
                         GenericityReport(False, len(planar), tuple(violations)))
    n = len(k.vertices)
    data = []
    for c in sorted(planar, key=lambda c: c.position):
        a1, a2 = k.vertices[c.seg_a], k.vertices[(c.seg_a + 1) % n]
        b1, b2 = k.vertices[c.seg_b], k.vertices[(c.seg_b + 1) % n]
        za = a1[2] + c.t_a * (a2[2] - a1[2])
        zb = b1[2] + c.t_b * (b2[2] - b1[2])
        if za == zb:
            raise NotSimple(f"segments {c.seg_a} and {c.seg_b} meet at {c.position}",
                            (c.seg_a, c.seg_b))
        if za > zb:
            over, t_o, under, t_u, z_o, z_u = c.seg_a, c.t_a, c.seg_b, c.t_b, za, zb
        else:
            over, t_o, under, t_u, z_o, z_u = c.seg_b, c.t_b, c.seg_a, c.t_a, zb, za
        do = _sub2(k.vertices[(over + 1) % n][:2], k.vertices[over][:2])
        du = _sub2(k.vertices[(under + 1) % n][:2], k.vertices[under][:2])
        data.append(CrossingDatum(len(data), c.position, over, t_o, under, t_u,
                                  _sign(_cross2(do, du)), z_o, z_u))
    return data


def project_to_diagram(k: PolyKnot):
    """Read the knot diagram off the projection to the xy-plane.

    Crossing ids follow the lexicographic order of crossing positions.  The
    traversal starts at crossing 0 on the strand whose direction comes first
    clockwise (the strand running "south-west to north-east" when the
    crossing is drawn with both strands pointing up), so the result does not
    depend on where the vertex list starts or on the heights involved.
    """
    from .diagram import Diagram

    data = extract_crossings(k)
    if not data:
        return Diagram((), ())
    passes = defaultdict(list)  # segment -> [(param, crossing id, is_over)]
    for c in data:
        passes[c.over_segment].append((c.over_param, c.id, True))
        passes[c.under_segment].append((c.under_param, c.id, False))
    code = []
    for seg in range(len(k.vertices)):
        for _, cid, over in sorted(passes.get(seg, ())):
            code.append((cid, over))
    first = data[0]
    start_over = first.sign > 0
    start = code.index((0, start_over))
    code = code[start:] + code[:start]
    return Diagram(tuple(code), tuple(c.sign for c in data),
                   positions=tuple(c.position for c in data))
