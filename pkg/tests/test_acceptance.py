"""End-to-end acceptance checks, one test per criterion.

Each test prints a single ``PASS``/``FAIL`` line with its runtime, then
asserts, so ``pytest -v -s`` or the captured output shows a summary.
"""

import random
import time
from fractions import Fraction as F

import pytest

from knotmaps.catalog import catalog, catalog_lookup
from knotmaps.construct import Schedule, build_fold, build_tent
from knotmaps.diagram import band_sum_hopf_rewrite, change_crossings, designated_clasp_crossings, mirror, simplify
from knotmaps.dynamics import (Itinerary, SignSeq, itinerary_of, make_pl, make_tent, point_from_itinerary,
                               realizing_pair, trajectory)
from knotmaps.geom import extract_crossings, project_to_diagram
from knotmaps.invariants import UNKNOT, fingerprint, jones, kauffman_bracket, torus_jones
from knotmaps.lift import Fold, LocalCC, Winding, ZLift, local_cc_point, local_cc_values, orbit, torus_curve
from knotmaps.orbit import cross_validate, finiteness_check

from oracles import oracle_bracket
from shapes import axis_loop, boundary_points

K = catalog_lookup


@pytest.fixture
def report(capsys):
    def emit(number, title, ok, elapsed, limit=None, detail=""):
        within = limit is None or elapsed < limit
        status = "PASS" if ok and within else "FAIL"
        budget = f" (limit {limit:g} s)" if limit is not None else ""
        with capsys.disabled():
            print(f"\n[{status}] criterion {number:2d}: {title}: {elapsed:.2f} s{budget}{detail}")
        assert ok, f"criterion {number} failed{detail}"
        assert within, f"criterion {number} took {elapsed:.1f} s, limit {limit} s"
    return emit


def test_fold_all_pairs(report):
    names = ["unknot", "trefoil_r", "trefoil_l", "figure8", "5_2"]
    start = time.perf_counter()
    bad = []
    for a in names:
        for b in names:
            k = build_fold(K(a), K(b)).knot
            if fingerprint(project_to_diagram(k)) != K(a).fingerprint:
                bad.append((a, b, "k"))
            if fingerprint(project_to_diagram(Fold().apply(k))) != K(b).fingerprint:
                bad.append((a, b, "F(k)"))
    report(1, "fold realizes all 25 ordered pairs", not bad, time.perf_counter() - start, 60,
           f"; failures {bad}" if bad else "")


def _tent_run(types, phi_text, horizon):
    b = build_tent([K(t) for t in types], Schedule.parse(phi_text), mu=3)
    m = ZLift(make_tent(3))
    knots = orbit(m, b.knot, horizon - 1)
    bad = [n for n, k in enumerate(knots)
           if fingerprint(project_to_diagram(k)) != b.expected(n).fingerprint]
    return b, m, bad


def test_tent_two_types(report):
    start = time.perf_counter()
    b, m, bad = _tent_run(["trefoil_r", "figure8"], "|trefoil_r,figure8", 12)
    cv = cross_validate(b.knot, m, b.plan, 12)
    report(2, "tent map, alternating trefoil/figure-8, 12 steps", not bad and cv,
           time.perf_counter() - start, 120, f"; mismatched steps {bad}, cross_validate {cv}")


def test_tent_three_types(report):
    start = time.perf_counter()
    _, _, bad = _tent_run(["trefoil_r", "figure8", "5_2"], "|trefoil_r,figure8,5_2", 9)
    report(3, "tent map, three types with period 3, 9 steps", not bad, time.perf_counter() - start, 120,
           f"; mismatched steps {bad}" if bad else "")


def test_torus_orbit(report):
    start = time.perf_counter()
    k0 = torus_curve(3, 60)
    w = Winding()
    fp0 = fingerprint(project_to_diagram(k0))
    k1, c1 = w.apply_with_certificate(k0)
    _, c2 = w.apply_with_certificate(k1)
    trefoils = {torus_jones(2, 3), torus_jones(2, 3).invert_variable()}
    t34 = {torus_jones(3, 4), torus_jones(3, 4).invert_variable()}
    ok = (fp0 == UNKNOT
          and c1.fingerprint.determinant == 3 and c1.fingerprint.jones in trefoils
          and c2.fingerprint.jones not in trefoils | {fp0.jones}
          and c2.fingerprint.jones in t34
          and c1.samples < 1024 and c2.samples < 1024)
    detail = f"; step 1 {c1.fingerprint.jones} at {c1.samples} samples, step 2 {c2.fingerprint.jones} at {c2.samples}"
    report(4, "winding orbit of the torus curve", ok, time.perf_counter() - start, 300, detail)


def test_local_crossing_change(report):
    start = time.perf_counter()
    ok = local_cc_point((0, 0, 0)) == (0, 0, 2)
    ok &= all(local_cc_point((0, F(y, 7), 1)) == (0, F(y, 7), 1) for y in range(-30, 31))
    k = axis_loop()
    (before,) = extract_crossings(k)
    (after,) = extract_crossings(LocalCC().apply(k))
    # before: the line at height 1 is over; after: the lifted x-axis (height 2) is over
    ok &= (before.over_height, before.under_height) == (1, 0)
    ok &= (after.over_height, after.under_height) == (2, 1)
    ok &= project_to_diagram(LocalCC().apply(k)).signs == (-project_to_diagram(k).signs[0],)
    points = boundary_points(100)
    agree = all(len(v) >= 2 and len(set(v.values())) == 1 for v in map(local_cc_values, points))
    report(5, "local crossing-change map", ok and agree and len(points) == 100,
           time.perf_counter() - start, 1)


def _random_seq(rng, cls, alphabet, max_prefix, max_tail):
    prefix = tuple(rng.choice(alphabet) for _ in range(rng.randint(0, max_prefix)))
    tail = tuple(rng.choice(alphabet) for _ in range(rng.randint(1, max_tail)))
    return cls(prefix, tail)


def test_switching_property(report):
    rng = random.Random(11)
    t3 = make_tent(3)
    start = time.perf_counter()
    bad = 0
    for _ in range(200):
        psi = _random_seq(rng, SignSeq, (-1, 1), 16, 4)
        x, y = realizing_pair(3, psi)
        xs, ys = trajectory(t3, x, 63), trajectory(t3, y, 63)
        for n in range(64):
            d = xs[n] - ys[n]
            if d == 0 or (1 if d > 0 else -1) != psi[n]:
                bad += 1
                break
    report(6, "tent map realizes 200 random sign sequences to depth 64", bad == 0,
           time.perf_counter() - start, 10, f"; {bad} failures" if bad else "")


def test_itinerary_conjugacy(report):
    rng = random.Random(12)
    t3 = make_tent(3)
    start = time.perf_counter()
    bad = 0
    for _ in range(200):
        it = _random_seq(rng, Itinerary, (0, 1), 16, 4)
        x = point_from_itinerary(3, it)
        ok = itinerary_of(3, x, 64) == it.first(64)
        cur = it
        for _ in range(64):
            nxt = cur.shift()
            ok &= t3(point_from_itinerary(3, cur)) == point_from_itinerary(3, nxt)
            cur = nxt
        bad += not ok
    report(7, "itinerary round trip and shift conjugacy on 200 itineraries", bad == 0,
           time.perf_counter() - start, None, f"; {bad} failures" if bad else "")


def _random_pl(rng):
    pieces_n = rng.randint(3, 5)
    bps = sorted(rng.sample([F(i, 4) for i in range(-8, 9)], pieces_n - 1))
    slope = lambda: F(rng.choice([-3, -2, -1, 1, 2, 3]), rng.choice([1, 2]))
    pieces = [(slope(), F(rng.randint(-4, 4), 4))]
    for b in bps:
        s0, c0 = pieces[-1]
        s = slope()
        pieces.append((s, s0 * b + c0 - s * b))
    return make_pl(bps, pieces)


def test_finiteness(report):
    rng = random.Random(13)
    start = time.perf_counter()
    knots = [K("trefoil_r").polyknot(), K("figure8").polyknot()]
    results = []
    for i in range(20):
        k = knots[i % 2]
        rep = finiteness_check(k, ZLift(_random_pl(rng)), 64)
        results.append((rep.distinct_fingerprints, rep.bound, len(rep.steps)))
    ok = all(d <= b and steps == 65 for d, b, steps in results)
    report(8, "20 random PL lifts stay within 2^a knot types over 64 steps", ok,
           time.perf_counter() - start, None, f"; max distinct {max(d for d, _, _ in results)}")


def test_invariant_oracles(report):
    start = time.perf_counter()
    ok = True
    checked = 0
    for spec in catalog():
        k = spec.polyknot()
        base = project_to_diagram(k)
        for flip in [()] + [(c,) for c in range(base.n)]:
            d = change_crossings(base, flip)
            if d.n > 8:
                continue
            ok &= kauffman_bracket(d).as_dict() == oracle_bracket(k, set(flip))
            ok &= jones(simplify(d)) == jones(d)
            checked += 1
        ok &= jones(mirror(spec.diagram)) == jones(spec.diagram).invert_variable()
    report(9, f"bracket oracle on {checked} diagrams, simplify and mirror identities", ok,
           time.perf_counter() - start)


def test_band_rewrite(report):
    start = time.perf_counter()
    bad = []
    for spec in catalog():
        d = spec.diagram
        for c in range(d.n):
            r = band_sum_hopf_rewrite(d, {c})
            if fingerprint(r) != spec.fingerprint:
                bad.append((spec.name, c, "rewrite"))
            clasp = change_crossings(r, designated_clasp_crossings(d, {c}))
            if fingerprint(clasp) != fingerprint(change_crossings(d, {c})):
                bad.append((spec.name, c, "clasp"))
    report(10, "band-sum rewrite of every singleton crossing set", not bad, time.perf_counter() - start,
           None, f"; failures {bad}" if bad else "")
