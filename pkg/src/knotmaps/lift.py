"""Self-maps of 3-space applied to polygonal knots.

Four kinds are supported:

* :class:`ZLift` ``(x, y, z) -> (x, y, f(z))`` for a piecewise-linear ``f``;
* :class:`Fold` ``(x, y, z) -> (x, y, |z|)``;
* :class:`LocalCC`, a map that is the identity outside a small cylinder and
  lifts the part of a crossing's lower strand inside it above the upper one;
* :class:`Winding`, angle doubling about the z-axis.

ZLift, Fold and LocalCC act exactly.  Winding is not piecewise linear, so its
image is sampled; the sample count is doubled until the fingerprint of the
image stops changing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .dynamics import PLMap1D, abs_map
from .errors import (AxisIntersection, GeometryError, IrrationalEvaluation, MapError,
                     NotInjectiveAtStep, NotInjectiveOnKnot, RefinementFailed)
from .geom import (PolyKnot, as_rat, find_self_intersection, make_polyknot, project_to_diagram,
                   subdivide_at_planes)
from .invariants import Fingerprint, fingerprint

SAMPLE_CAP = 2 ** 10


def _checked(vertices) -> PolyKnot:
    """Wrap image vertices, failing with a witness when the image is not simple."""
    vs = tuple(vertices)
    n = len(vs)
    for i in range(n):
        if vs[i] == vs[(i + 1) % n]:
            raise NotInjectiveOnKnot(f"vertices {i} and {(i + 1) % n} have the same image", (i, i))
    w = find_self_intersection(vs)
    if w is not None:
        raise NotInjectiveOnKnot(f"image segments {w[0]} and {w[1]} meet", w)
    return PolyKnot(vs)


class SpatialMap:
    kind = ""

    def apply(self, k: PolyKnot) -> PolyKnot:
        raise NotImplementedError

    def to_json(self) -> dict:
        return {"kind": self.kind}


@dataclass(frozen=True)
class ZLift(SpatialMap):
    f: PLMap1D
    kind = "zlift"

    def apply(self, k: PolyKnot) -> PolyKnot:
        sub = subdivide_at_planes(k, self.f.breakpoints)
        return _checked((x, y, self.f(z)) for x, y, z in sub.vertices)

    def to_json(self) -> dict:
        return {"kind": self.kind, "map": self.f.to_json()}


@dataclass(frozen=True)
class Fold(ZLift):
    f: PLMap1D = field(default_factory=abs_map)
    kind = "fold"

    def to_json(self) -> dict:
        return {"kind": self.kind}


# ---------------------------------------------------------------------------
# the local crossing-change map

def _rational_sqrt(q: Fraction) -> Optional[Fraction]:
    if q < 0:
        return None
    n, d = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if n * n == q.numerator and d * d == q.denominator:
        return Fraction(n, d)
    return None


def _local_regions(x, y, z) -> list[int]:
    """Closed regions (1)-(4) of the local crossing-change map containing the point."""
    r2 = x * x + y * y
    out = []
    if abs(z) >= 1 or r2 >= 4:
        out.append(1)
    inner = r2 <= (1 + abs(z)) ** 2
    if -1 <= z <= 0 and inner:
        out.append(2)
    if 0 <= z <= 1 and inner:
        out.append(3)
    # case (4) is only meant inside the cylinder; outside it case (1) rules
    if -1 <= z <= 1 and (1 + abs(z)) ** 2 <= r2 <= 4:
        out.append(4)
    return out


def _local_formula(region: int, x, y, z) -> Fraction:
    if region == 1:
        return z
    if region == 2:
        return 3 * z + 2
    if region == 3:
        return -z + 2
    r = _rational_sqrt(x * x + y * y)
    if r is None:
        raise IrrationalEvaluation(f"sqrt({x * x + y * y}) is irrational at {(x, y, z)}")
    return z - 2 * r + 4


def local_cc_values(p) -> dict[int, Fraction]:
    """Height given by every region formula whose closed region contains ``p``."""
    x, y, z = (as_rat(c) for c in p)
    return {reg: _local_formula(reg, x, y, z) for reg in _local_regions(x, y, z)}


def local_cc_point(p) -> tuple[Fraction, Fraction, Fraction]:
    x, y, z = (as_rat(c) for c in p)
    regions = _local_regions(x, y, z)
    # prefer formulas that stay rational; they agree on shared boundaries
    for reg in sorted(regions, key=lambda r: r == 4):
        try:
            return (x, y, _local_formula(reg, x, y, z))
        except IrrationalEvaluation:
            continue
    raise IrrationalEvaluation(f"no rational formula at {(x, y, z)}")


def _min_r2_on_segment(a, b) -> Fraction:
    dx, dy = b[0] - a[0], b[1] - a[1]
    dd = dx * dx + dy * dy
    t = -(a[0] * dx + a[1] * dy) / dd if dd else Fraction(0)
    t = min(max(t, Fraction(0)), Fraction(1))
    x, y = a[0] + t * dx, a[1] + t * dy
    return x * x + y * y


def _axis_breaks(a, b) -> list[Fraction]:
    """Parameters where a segment in the plane x = 0 or y = 0 crosses a region boundary."""
    if a[0] == 0 and b[0] == 0:
        ra, rb = a[1], b[1]
    else:
        ra, rb = a[0], b[0]
    dz, dr = b[2] - a[2], rb - ra
    ts = set()

    def solve(c0, c1, target):
        # c0 + t c1 = target
        if c1 != 0:
            t = (target - c0) / c1
            if 0 < t < 1:
                ts.add(t)

    # the formulas only see r where r >= 1, so r = 0 is not a crease
    solve(a[2], dz, 0)
    for s in (1, -1):
        solve(ra, dr, 2 * s)
        solve(a[2], dz, s)
        for s2 in (1, -1):
            # r-coordinate s * (1 + s2 * z) on the cone r = 1 + |z|
            solve(ra - s * s2 * a[2], dr - s * s2 * dz, s)
    return sorted(ts)


@dataclass(frozen=True)
class LocalCC(SpatialMap):
    kind = "local_cc"

    def apply(self, k: PolyKnot) -> PolyKnot:
        k = subdivide_at_planes(k, [-1, 1])
        n = len(k.vertices)
        out = []
        for i in range(n):
            a, b = k.vertices[i], k.vertices[(i + 1) % n]
            out.append(local_cc_point(a))
            if min(a[2], b[2]) >= 1 or max(a[2], b[2]) <= -1 or _min_r2_on_segment(a, b) >= 4:
                continue
            if (a[0] == 0 and b[0] == 0) or (a[1] == 0 and b[1] == 0):
                for t in _axis_breaks(a, b):
                    out.append(local_cc_point(tuple(p + t * (q - p) for p, q in zip(a, b))))
                continue
            raise IrrationalEvaluation(
                f"segment {i} enters the support away from the planes x = 0 and y = 0")
        return _checked(_drop_repeats(out))


def _drop_repeats(vs):
    out = []
    for v in vs:
        if not out or out[-1] != v:
            out.append(v)
    while len(out) > 1 and out[0] == out[-1]:
        out.pop()
    return out


# ---------------------------------------------------------------------------
# angle doubling

def _double_angle(x: float, y: float) -> tuple[float, float]:
    r = math.hypot(x, y)
    return (x * x - y * y) / r, 2 * x * y / r


def _to_rat(v: float, limit: int = 10 ** 12) -> Fraction:
    return Fraction(v).limit_denominator(limit)


def _segment_meets_axis(a, b) -> bool:
    dx, dy = b[0] - a[0], b[1] - a[1]
    if a[0] * dy - a[1] * dx != 0:
        return False
    dd = dx * dx + dy * dy
    t = -(a[0] * dx + a[1] * dy) / dd
    return 0 <= t <= 1


@dataclass(frozen=True)
class RefinementCertificate:
    samples: int  # samples per segment of the returned image
    fingerprint: Fingerprint
    history: tuple  # (samples, fingerprint or error text) in the order tried


@dataclass(frozen=True)
class Winding(SpatialMap):
    samples: int = 2
    kind = "winding"

    def __post_init__(self):
        if self.samples < 2:
            raise MapError("winding needs at least 2 samples per segment")

    def sampled_image(self, k: PolyKnot, samples: int) -> PolyKnot:
        n = len(k.vertices)
        for i in range(n):
            a, b = k.segment(i)
            if _segment_meets_axis(a, b):
                raise AxisIntersection(f"segment {i} meets the z-axis")
        out = []
        for i in range(n):
            a, b = k.segment(i)
            fa = tuple(float(c) for c in a)
            fb = tuple(float(c) for c in b)
            for j in range(samples):
                t = j / samples
                x, y, z = (p + t * (q - p) for p, q in zip(fa, fb))
                u, v = _double_angle(x, y)
                z_exact = a[2] + Fraction(j, samples) * (b[2] - a[2])
                out.append((_to_rat(u), _to_rat(v), z_exact))
        try:
            return make_polyknot(out)
        except GeometryError as exc:
            raise NotInjectiveOnKnot(f"sampled winding image is not a knot: {exc}") from exc

    def apply_with_certificate(self, k: PolyKnot) -> tuple[PolyKnot, RefinementCertificate]:
        s = self.samples
        history = []
        prev = None
        while s <= SAMPLE_CAP:
            try:
                img = self.sampled_image(k, s)
                fp = fingerprint(project_to_diagram(img))
            except AxisIntersection:
                raise
            except (GeometryError, MapError) as exc:
                history.append((s, f"{type(exc).__name__}: {exc}"))
                prev = None
                s *= 2
                continue
            history.append((s, fp))
            if prev is not None and prev[1] == fp:
                return prev[0], RefinementCertificate(prev[2], fp, tuple(history))
            prev = (img, fp, s)
            s *= 2
        raise RefinementFailed(f"fingerprint not stable up to {SAMPLE_CAP} samples per segment")

    def apply(self, k: PolyKnot) -> PolyKnot:
        return self.apply_with_certificate(k)[0]

    def to_json(self) -> dict:
        return {"kind": self.kind, "samples": self.samples}


def apply(m: SpatialMap, k: PolyKnot) -> PolyKnot:
    return m.apply(k)


def orbit(m: SpatialMap, k: PolyKnot, n: int) -> list[PolyKnot]:
    """``[k, m(k), ..., m^n(k)]``; stops with :class:`NotInjectiveAtStep`."""
    if n < 0:
        raise MapError("orbit length must be non-negative")
    out = [k]
    for step in range(1, n + 1):
        try:
            out.append(m.apply(out[-1]))
        except (MapError, GeometryError) as exc:
            raise NotInjectiveAtStep(step, exc) from exc
    return out


def torus_curve(q_turns: int = 3, samples: int = 60) -> PolyKnot:
    """Inscribed polygon of ``((2 + cos qt) cos t, (2 + cos qt) sin t, sin qt)``."""
    from .errors import NonGeneric
    from .geom import is_generic_projection

    if samples < 24:
        raise MapError("torus_curve needs at least 24 samples")
    pts = []
    for j in range(samples):
        # quarter-step phase keeps samples off the symmetric fibers that
        # angle doubling identifies
        t = 2 * math.pi * (j + 0.25) / samples
        r = 2 + math.cos(q_turns * t)
        pts.append((_to_rat(r * math.cos(t), 10 ** 6), _to_rat(r * math.sin(t), 10 ** 6),
                    _to_rat(math.sin(q_turns * t), 10 ** 6)))
    k = make_polyknot(pts)
    report = is_generic_projection(k)
    if not report.ok:
        raise NonGeneric(f"torus curve with {samples} samples has a degenerate projection", report)
    return k


def spatial_map_from_json(data: dict) -> SpatialMap:
    kind = data.get("kind")
    if kind == "zlift":
        return ZLift(PLMap1D.from_json(data["map"]))
    if kind == "fold":
        return Fold()
    if kind == "local_cc":
        return LocalCC()
    if kind == "winding":
        return Winding(int(data.get("samples", 2)))
    raise MapError(f"unknown spatial map kind {kind!r}")
