from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from knotmaps.catalog import catalog_lookup
from knotmaps.construct import (HeightPlan, Schedule, build_fold, build_tent, fold_construction,
                                sign_tracked_diagram, tent_construction)
from knotmaps.diagram import change_crossings
from knotmaps.dynamics import identity_map, make_tent
from knotmaps.errors import ConstructionError, DuplicateFingerprints, HeightCollision
from knotmaps.geom import find_self_intersection, is_generic_projection, project_to_diagram
from knotmaps.invariants import UNKNOT, fingerprint
from knotmaps.lift import Fold, ZLift

K = catalog_lookup
FOLD_TYPES = ["unknot", "trefoil_r", "trefoil_l", "figure8", "5_2"]


def test_fold_unknot_pair():
    k = fold_construction(K("unknot"), K("unknot"))
    assert fingerprint(project_to_diagram(k)) == UNKNOT
    assert fingerprint(project_to_diagram(Fold().apply(k))) == UNKNOT


def test_fold_trefoil_to_figure8():
    b = build_fold(K("trefoil_r"), K("figure8"))
    assert fingerprint(b.diagram) == K("trefoil_r").fingerprint
    img = project_to_diagram(Fold().apply(b.knot))
    assert fingerprint(img) == K("figure8").fingerprint
    assert img == change_crossings(b.diagram, b.flip_set)


def test_fold_swap():
    k = fold_construction(K("figure8"), K("trefoil_l"))
    assert fingerprint(project_to_diagram(k)) == K("figure8").fingerprint
    assert fingerprint(project_to_diagram(Fold().apply(k))) == K("trefoil_l").fingerprint


def test_fold_dips_exceed_over_height():
    b = build_fold(K("5_2"), K("trefoil_r"), eps=F(1, 3))
    for c in b.flip_set:
        ho, hu = b.plan.heights[c]
        assert hu < 0 and -hu > ho
    for v in b.knot.vertices:
        assert v[2] in {F(1, 3), F(-2, 3), F(1, 6)}


def test_fold_needs_positive_eps():
    with pytest.raises(ConstructionError):
        build_fold(K("unknot"), K("unknot"), eps=0)


def test_height_plan_rejects_collision():
    with pytest.raises(HeightCollision):
        HeightPlan({0: (F(1), F(1))})


def test_height_plan_json():
    plan = build_tent([K("trefoil_r"), K("figure8")], Schedule.parse("|trefoil_r,figure8")).plan
    assert HeightPlan.from_json(plan.to_json()) == plan
    assert plan.swapped(0).heights[0] == plan.heights[0][::-1]


def test_sign_tracked_step_zero_is_base():
    b = build_tent([K("trefoil_r"), K("figure8")], Schedule.parse("|trefoil_r,figure8"))
    assert sign_tracked_diagram(b.diagram, b.plan, b.map, 0) == b.diagram


def test_sign_tracked_fixed_plan():
    d = K("figure8").diagram
    plan = HeightPlan({c: (F(3, 4), F(0)) for c in range(d.n)})
    for n in range(5):
        assert sign_tracked_diagram(d, plan, make_tent(3), n) == d


def test_sign_tracked_collision():
    d = K("trefoil_r").diagram
    plan = HeightPlan({c: (F(1, 3), F(2, 3)) for c in range(d.n)})
    with pytest.raises(HeightCollision):
        sign_tracked_diagram(d, plan, make_tent(3), 1)


def test_sign_tracked_missing_crossing():
    with pytest.raises(ConstructionError):
        sign_tracked_diagram(K("trefoil_r").diagram, HeightPlan({0: (F(1), F(0))}), identity_map(), 0)


def test_tent_single_type_constant():
    b = build_tent([K("trefoil_r")], Schedule.parse("|trefoil_r"))
    assert set(b.plan.heights.values()) == {(F(3, 4), F(0))}
    for n in range(6):
        assert fingerprint(sign_tracked_diagram(b.diagram, b.plan, b.map, n)) == K("trefoil_r").fingerprint


def test_tent_reorders_first_type():
    b = build_tent([K("trefoil_r"), K("figure8")], Schedule.parse("|figure8,trefoil_r"))
    assert b.order[0].name == "figure8"
    assert b.expected(0).name == "figure8" and b.expected(1).name == "trefoil_r"
    assert fingerprint(b.diagram) == K("figure8").fingerprint


def test_tent_families_swap_order_for_later_summands():
    b = build_tent([K("trefoil_r"), K("figure8"), K("5_2")], Schedule.parse("|trefoil_r,figure8,5_2"))
    off = b.summand_offsets
    for c, fam in b.plan.families.items():
        ho, hu = b.plan.heights[c]
        if fam == 0:
            assert (ho, hu) == (F(3, 4), 0)
        else:
            # step 0 draws D_1 and the changed D_i' as given
            assert ho > hu
        t = make_tent(3)
        ho1, hu1 = t(ho), t(hu)
        # step 1: trefoil's unknotting crossings flip to trivialize it, figure8's
        # flip back to realize it, 5_2 keeps its changed drawing
        assert (ho1 < hu1) == (fam in (1, 2))
    assert {b.plan.families[off[1] + c] for c in K("figure8").unknotting_set} == {2}


def test_tent_duplicate_fingerprints():
    with pytest.raises(DuplicateFingerprints):
        build_tent([K("trefoil_r"), K("trefoil_r")], Schedule.parse("|trefoil_r"))


def test_tent_needs_mu_above_two():
    with pytest.raises(ConstructionError):
        build_tent([K("trefoil_r")], Schedule.parse("|trefoil_r"), mu=2)


def test_tent_unknown_schedule_type():
    with pytest.raises(ConstructionError):
        build_tent([K("trefoil_r")], Schedule.parse("|trefoil_r,figure8"))


def test_schedule_text():
    s = Schedule.parse("5_2, figure8|trefoil_r,figure8")
    assert s.text() == "5_2,figure8|trefoil_r,figure8"
    assert s[5] == "figure8"
    with pytest.raises(ConstructionError):
        Schedule.parse("trefoil_r")


def test_tent_geometric_steps_match_tracked():
    b = build_tent([K("trefoil_r"), K("figure8")], Schedule.parse("|trefoil_r,figure8"))
    cur = b.knot
    for n in range(5):
        if n:
            cur = ZLift(b.map).apply(cur)
        assert project_to_diagram(cur) == sign_tracked_diagram(b.diagram, b.plan, b.map, n)
        assert fingerprint(project_to_diagram(cur)) == b.expected(n).fingerprint


def test_tent_construction_returns_knot():
    k = tent_construction([K("trefoil_r"), K("figure8")], Schedule.parse("|trefoil_r,figure8"))
    assert is_generic_projection(k).ok


# -- properties ---------------------------------------------------------------

@settings(deadline=None, max_examples=25)
@given(st.sampled_from(FOLD_TYPES), st.sampled_from(FOLD_TYPES))
def test_fold_flips_exactly_designated(a, b):
    build = build_fold(K(a), K(b))
    assert is_generic_projection(build.knot).ok
    assert find_self_intersection(build.knot.vertices) is None
    assert all(build.knot.vertices[i][:2] != build.knot.vertices[(i + 1) % len(build.knot)][:2]
               for i in range(len(build.knot)))
    img = project_to_diagram(Fold().apply(build.knot))
    assert img == change_crossings(build.diagram, build.flip_set)


names3 = st.lists(st.sampled_from(["trefoil_r", "figure8", "5_2", "unknot"]), min_size=1, max_size=3,
                  unique=True)


@settings(deadline=None, max_examples=25)
@given(names3, st.data())
def test_tent_tracked_realizes_schedule(types, data):
    prefix = data.draw(st.lists(st.sampled_from(types), max_size=3))
    tail = data.draw(st.lists(st.sampled_from(types), min_size=1, max_size=3))
    phi = Schedule(tuple(prefix), tuple(tail))
    b = build_tent([K(t) for t in types], phi)
    for n in range(len(prefix) + 2 * len(tail)):
        d = sign_tracked_diagram(b.diagram, b.plan, b.map, n)
        assert fingerprint(d) == K(phi[n]).fingerprint
