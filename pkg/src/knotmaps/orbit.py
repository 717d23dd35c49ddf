"""Orbit experiments: prescribed type sequences, finiteness, two-path checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .construct import HeightPlan, sign_tracked_diagram
from .errors import ConstructionError, GeometryError, KnotMapError, MapError
from .geom import PolyKnot, extract_crossings, project_to_diagram
from .invariants import Fingerprint, fingerprint
from .lift import SpatialMap, Winding, ZLift


@dataclass(frozen=True)
class StepRecord:
    step: int
    fingerprint: Optional[Fingerprint]
    expected: Optional[Fingerprint] = None
    match: Optional[bool] = None
    signs: tuple = ()
    error: Optional[str] = None
    samples: Optional[int] = None  # winding refinement level, if any

    def to_json(self) -> dict:
        return {"step": self.step,
                "fingerprint": self.fingerprint.to_json() if self.fingerprint else None,
                "expected": self.expected.to_json() if self.expected else None,
                "match": self.match,
                "signs": list(self.signs),
                "error": self.error,
                "samples": self.samples}


@dataclass
class OrbitReport:
    steps: list[StepRecord] = field(default_factory=list)
    witness_pairs: int = 0
    distinct_counts: list[int] = field(default_factory=list)  # running, after each step
    first_return: Optional[tuple[int, int]] = None  # (step, earlier step with same signs)
    path: str = "geometric"

    @property
    def distinct_fingerprints(self) -> int:
        return self.distinct_counts[-1] if self.distinct_counts else 0

    @property
    def bound(self) -> int:
        return 2 ** self.witness_pairs

    @property
    def bound_holds(self) -> bool:
        return self.distinct_fingerprints <= self.bound

    @property
    def all_match(self) -> bool:
        return bool(self.steps) and all(s.error is None and s.match is not False for s in self.steps)

    def mismatches(self) -> list[int]:
        return [s.step for s in self.steps if s.match is False]

    def add(self, rec: StepRecord, seen: set):
        if rec.step != len(self.steps):
            raise ValueError("steps must be contiguous")
        self.steps.append(rec)
        if rec.fingerprint is not None:
            seen.add(rec.fingerprint)
        self.distinct_counts.append(len(seen))

    def to_json(self) -> dict:
        return {"path": self.path,
                "steps": [s.to_json() for s in self.steps],
                "summary": {"all_match": self.all_match,
                            "distinct_fingerprints": self.distinct_fingerprints,
                            "distinct_counts": self.distinct_counts,
                            "witness_pairs": self.witness_pairs,
                            "bound": self.bound,
                            "bound_holds": self.bound_holds,
                            "first_return": list(self.first_return) if self.first_return else None}}


def _match(fp, expected):
    if expected is None:
        return None
    return fp is not None and fp == expected


def verify_sequence(k: PolyKnot, m: SpatialMap, expected: Sequence[Fingerprint],
                    plan: Optional[HeightPlan] = None) -> OrbitReport:
    """Fingerprint steps ``0 .. len(expected) - 1`` of the orbit of ``k``.

    With a z-lift and a height plan the diagrams come from the crossing
    heights alone; otherwise every image is computed.  Errors end the run
    but are recorded in the report.
    """
    if not expected:
        raise ConstructionError("expected sequence must be non-empty")
    base = project_to_diagram(k)
    report = OrbitReport(witness_pairs=base.n)
    seen: set = set()
    if isinstance(m, ZLift) and plan is not None:
        report.path = "sign_tracked"
        for n, exp in enumerate(expected):
            try:
                d = sign_tracked_diagram(base, plan, m.f, n)
            except KnotMapError as exc:
                report.add(StepRecord(n, None, exp, False, error=f"{type(exc).__name__}: {exc}"), seen)
                break
            fp = fingerprint(d)
            report.add(StepRecord(n, fp, exp, _match(fp, exp), d.signs), seen)
        return report
    cur = k
    for n, exp in enumerate(expected):
        samples = None
        try:
            if n > 0:
                if isinstance(m, Winding):
                    cur, cert = m.apply_with_certificate(cur)
                    samples = cert.samples
                else:
                    cur = m.apply(cur)
            d = project_to_diagram(cur)
        except (MapError, GeometryError) as exc:
            report.add(StepRecord(n, None, exp, False, error=f"{type(exc).__name__}: {exc}"), seen)
            break
        fp = fingerprint(d)
        report.add(StepRecord(n, fp, exp, _match(fp, exp), d.signs, samples=samples), seen)
    return report


def crossing_plan(k: PolyKnot) -> HeightPlan:
    """Height plan read off a knot: the two heights over each crossing."""
    return HeightPlan({c.id: (c.over_height, c.under_height) for c in extract_crossings(k)})


def finiteness_check(k: PolyKnot, m: ZLift, n: int) -> OrbitReport:
    """Distinct fingerprints over steps ``0 .. n`` against the bound ``2^a``.

    ``a`` is the number of crossings of ``p(k)``; a z-lift keeps the
    projection, so only the height order over each crossing can change.
    """
    if not isinstance(m, ZLift):
        raise MapError("finiteness_check needs a z-lift")
    base = project_to_diagram(k)
    plan = crossing_plan(k)
    report = OrbitReport(witness_pairs=base.n, path="sign_tracked")
    seen: set = set()
    by_signs: dict[tuple, int] = {}
    for step in range(n + 1):
        try:
            d = sign_tracked_diagram(base, plan, m.f, step)
        except KnotMapError as exc:
            report.add(StepRecord(step, None, error=f"{type(exc).__name__}: {exc}"), seen)
            break
        fp = fingerprint(d)
        report.add(StepRecord(step, fp, signs=d.signs), seen)
        if d.signs in by_signs:
            if report.first_return is None:
                report.first_return = (step, by_signs[d.signs])
        else:
            by_signs[d.signs] = step
    return report


def first_divergence(k: PolyKnot, m: ZLift, plan: HeightPlan, n: int) -> Optional[int]:
    """First step where the sign-tracked and geometric diagrams differ."""
    base = project_to_diagram(k)
    cur = k
    for step in range(n + 1):
        if step:
            cur = m.apply(cur)
        try:
            tracked = sign_tracked_diagram(base, plan, m.f, step)
        except KnotMapError:
            return step
        if tracked != project_to_diagram(cur):
            return step
    return None


def cross_validate(k: PolyKnot, m: ZLift, plan: HeightPlan, n: int) -> bool:
    return first_divergence(k, m, plan, n) is None


def sign_period(report: OrbitReport) -> Optional[tuple[int, int]]:
    """``(start, period)`` of the sign-vector sequence if it repeats within the report."""
    vecs = [s.signs for s in report.steps]
    for period in range(1, len(vecs)):
        for start in range(len(vecs) - period):
            if all(vecs[i] == vecs[i + period] for i in range(start, len(vecs) - period)):
                if len(vecs) - period - start >= period:
                    return start, period
                break
    return None
