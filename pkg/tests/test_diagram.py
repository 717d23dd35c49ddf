import json

import pytest
from hypothesis import given, strategies as st

from knotmaps.catalog import catalog, catalog_lookup, names
from knotmaps.diagram import (EMPTY, Diagram, _r2, band_sum_hopf_rewrite, change_crossings,
                              connected_sum, designated_clasp_crossings, faces, is_planar, mirror,
                              r3_moves, reverse, simplify)
from knotmaps.errors import DiagramError, EmptySet, UnknownCrossingId, UnknownKnotName
from knotmaps.geom import project_to_diagram
from knotmaps.invariants import UNKNOT, determinant, fingerprint, jones
from knotmaps.layout import braid_closure, embed


def braid_diagram(strands, word):
    signs = [1 if g > 0 else -1 for g in word]
    k = embed(braid_closure(strands, word), signs, {i: (1, -1) for i in range(len(word))}, 0)
    return project_to_diagram(k)


TREFOIL = catalog_lookup("trefoil_r").diagram
FIG8 = catalog_lookup("figure8").diagram


def test_sum_of_empties():
    assert connected_sum(EMPTY, EMPTY) == EMPTY


def test_sum_with_empty_is_identity():
    assert connected_sum(TREFOIL, EMPTY) == TREFOIL


def test_trefoil_plus_figure8():
    d = connected_sum(TREFOIL, FIG8)
    assert d.n == 7 and is_planar(d)
    assert determinant(d) == 15


def test_sum_ids_tagged_by_origin():
    d = connected_sum(TREFOIL, FIG8)
    assert d.signs[:3] == TREFOIL.signs and d.signs[3:] == FIG8.signs


def test_change_empty_set_is_identity():
    assert change_crossings(TREFOIL, ()) == TREFOIL


def test_trefoil_one_change_unknots():
    d = change_crossings(TREFOIL, {1})
    assert simplify(d) == EMPTY
    assert fingerprint(d) == UNKNOT


def test_change_is_involution():
    assert change_crossings(change_crossings(FIG8, {0, 2}), {0, 2}) == FIG8


def test_change_unknown_id():
    with pytest.raises(UnknownCrossingId):
        change_crossings(TREFOIL, {3})


def test_change_flips_sign_and_flag():
    d = change_crossings(TREFOIL, {0})
    assert d.signs == (-1, 1, 1)
    assert d.passage(0, True) == TREFOIL.passage(0, False)


def test_mirror_empty():
    assert mirror(EMPTY) == EMPTY


def test_mirror_trefoil_is_left_trefoil():
    m = mirror(TREFOIL)
    assert fingerprint(m) == catalog_lookup("trefoil_l").fingerprint
    assert jones(m) == jones(TREFOIL).invert_variable()


def test_figure8_amphichiral():
    assert fingerprint(mirror(FIG8)) == fingerprint(FIG8)


def test_kink_simplifies():
    assert simplify(Diagram(((0, True), (0, False)), (1,))) == EMPTY


def test_r2_pair_removed():
    d = braid_diagram(3, (1, 2, 2, -2))
    reduced = _r2(d, faces(d))
    assert reduced is not None and reduced.n == 2
    assert simplify(d) == EMPTY


def test_trefoil_does_not_simplify():
    assert simplify(TREFOIL).n == 3


def test_r3_move_preserves_type():
    d = braid_diagram(3, (1, 2, 1, -2))  # s1 s2 s1 bounds a triangle
    moves = r3_moves(d)
    assert moves
    for m in moves:
        assert is_planar(m)
        assert fingerprint(m) == fingerprint(d)


def test_band_rewrite_trefoil():
    r = band_sum_hopf_rewrite(TREFOIL, {0})
    # sigma^e -> sigma^-e sigma^e sigma^e adds two crossings
    assert r.n == 5 and is_planar(r)
    assert fingerprint(r) == fingerprint(TREFOIL)
    changed = change_crossings(r, designated_clasp_crossings(TREFOIL, {0}))
    assert fingerprint(changed) == UNKNOT


def test_band_rewrite_two_crossings_on_52():
    d = catalog_lookup("5_2").diagram
    r = band_sum_hopf_rewrite(d, {0, 3})
    assert r.n == d.n + 4
    assert fingerprint(r) == fingerprint(d)
    changed = change_crossings(r, designated_clasp_crossings(d, {0, 3}))
    assert fingerprint(changed) == fingerprint(change_crossings(d, {0, 3}))


def test_band_rewrite_errors():
    with pytest.raises(EmptySet):
        band_sum_hopf_rewrite(TREFOIL, set())
    with pytest.raises(UnknownCrossingId):
        band_sum_hopf_rewrite(TREFOIL, {7})


def test_catalog_unknot():
    s = catalog_lookup("unknot")
    assert s.diagram == EMPTY and s.fingerprint == UNKNOT
    assert s.fingerprint.determinant == 1


def test_catalog_trefoil_and_figure8():
    assert catalog_lookup("trefoil_r").diagram.n == 3
    assert catalog_lookup("trefoil_r").fingerprint.determinant == 3
    assert catalog_lookup("figure8").diagram.n == 4
    assert catalog_lookup("figure8").fingerprint.determinant == 5


def test_catalog_unknown_name():
    with pytest.raises(UnknownKnotName):
        catalog_lookup("7_4")


def test_catalog_names():
    assert set(names()) == {"unknot", "trefoil_r", "trefoil_l", "figure8", "5_1", "5_2"}


@pytest.mark.parametrize("spec", catalog(), ids=lambda s: s.name)
def test_catalog_entry_invariants(spec):
    d = spec.diagram
    assert is_planar(d)
    assert fingerprint(d) == spec.fingerprint
    assert simplify(change_crossings(d, spec.unknotting_set)) == EMPTY


@pytest.mark.parametrize("spec", catalog(), ids=lambda s: s.name)
def test_json_round_trip(spec):
    d = spec.diagram
    text = d.dumps()
    back = Diagram.from_json(json.loads(text))
    assert back == d and back.dumps() == text


def test_json_schema_fields():
    data = TREFOIL.to_json()
    assert set(data) == {"crossings", "arc_order"}
    assert set(data["crossings"][0]) == {"id", "sign", "over_arc", "under_arc"}


def test_invalid_diagrams_rejected():
    with pytest.raises(DiagramError):
        Diagram(((0, True), (0, True)), (1,))
    with pytest.raises(DiagramError):
        Diagram(((0, True),), (1,))


def test_reverse_keeps_type():
    for spec in catalog():
        assert fingerprint(reverse(spec.diagram)) == spec.fingerprint


# -- properties ---------------------------------------------------------------

specs = st.sampled_from([s for s in catalog() if s.diagram.n])


@given(specs, st.data())
def test_change_commutes_on_disjoint_sets(spec, data):
    ids = list(range(spec.diagram.n))
    a = set(data.draw(st.lists(st.sampled_from(ids), unique=True)))
    b = set(data.draw(st.lists(st.sampled_from([i for i in ids if i not in a] or [None]), unique=True))) - {None}
    d = spec.diagram
    assert change_crossings(change_crossings(d, a), b) == change_crossings(change_crossings(d, b), a)
    assert change_crossings(change_crossings(d, a), a) == d


@given(specs, specs)
def test_sum_fingerprints_multiply(s1, s2):
    d = connected_sum(s1.diagram, s2.diagram)
    assert determinant(d) == s1.fingerprint.determinant * s2.fingerprint.determinant
    assert jones(d) == s1.fingerprint.jones * s2.fingerprint.jones


@given(specs)
def test_mirror_involution(spec):
    assert mirror(mirror(spec.diagram)) == spec.diagram
    assert jones(mirror(spec.diagram)) == spec.fingerprint.jones.invert_variable()


@given(specs, st.data())
def test_band_rewrite_singletons(spec, data):
    c = data.draw(st.sampled_from(range(spec.diagram.n)))
    r = band_sum_hopf_rewrite(spec.diagram, {c})
    assert fingerprint(r) == spec.fingerprint
    changed = change_crossings(r, designated_clasp_crossings(spec.diagram, {c}))
    assert fingerprint(changed) == fingerprint(change_crossings(spec.diagram, {c}))
