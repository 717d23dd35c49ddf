"""Combinatorial one-component knot diagrams as signed Gauss codes.

A :class:`Diagram` stores the sequence of passages met while walking once
around the knot: ``code[k] = (crossing_id, is_over)``.  Edge ``k`` of the
diagram runs from passage ``k`` to passage ``k + 1`` (cyclically).  Crossing
ids are dense, ``0 .. n-1``, and ``signs[c]`` is the sign of crossing ``c``.

The planar structure is recovered from the signs: at each crossing the four
incident edges are listed counterclockwise starting at the incoming under
edge (PD convention), which determines faces, checkerboard colourings and
the Reidemeister moves below.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .errors import DiagramError, EmptySet, UnknownCrossingId

CrossingSet = frozenset


@dataclass(frozen=True)
class Diagram:
    code: tuple[tuple[int, bool], ...]
    signs: tuple[int, ...]
    positions: Optional[tuple] = field(default=None, compare=False)

    def __post_init__(self):
        n = len(self.signs)
        if len(self.code) != 2 * n:
            raise DiagramError(f"{n} crossings need {2 * n} passages, got {len(self.code)}")
        seen = {}
        for cid, over in self.code:
            if not 0 <= cid < n:
                raise DiagramError(f"passage refers to unknown crossing {cid}")
            if (cid, over) in seen:
                raise DiagramError(f"crossing {cid} passed {'over' if over else 'under'} twice")
            seen[(cid, over)] = True
        if any(s not in (1, -1) for s in self.signs):
            raise DiagramError("crossing signs must be +1 or -1")

    @property
    def n(self) -> int:
        return len(self.signs)

    def crossing_ids(self) -> range:
        return range(self.n)

    def passage(self, cid: int, over: bool) -> int:
        return self.code.index((cid, over))

    def writhe(self) -> int:
        return sum(self.signs)

    # -- JSON --------------------------------------------------------------

    def to_json(self) -> dict:
        crossings = []
        for cid in range(self.n):
            crossings.append({"id": cid, "sign": self.signs[cid],
                              "over_arc": self.passage(cid, True),
                              "under_arc": self.passage(cid, False)})
        return {"crossings": crossings, "arc_order": [cid for cid, _ in self.code]}

    @classmethod
    def from_json(cls, data: dict) -> "Diagram":
        order = list(data["arc_order"])
        crossings = sorted(data["crossings"], key=lambda c: c["id"])
        signs = tuple(int(c["sign"]) for c in crossings)
        if [c["id"] for c in crossings] != list(range(len(crossings))):
            raise DiagramError("crossing ids must be 0..n-1")
        over_at = {c["over_arc"]: c["id"] for c in crossings}
        code = []
        for k, cid in enumerate(order):
            code.append((cid, over_at.get(k) == cid))
        for c in crossings:
            if order[c["over_arc"]] != c["id"] or order[c["under_arc"]] != c["id"]:
                raise DiagramError(f"crossing {c['id']} arcs disagree with arc_order")
        return cls(tuple(code), signs)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


EMPTY = Diagram((), ())


def _renumber(code, signs_by_id: dict) -> Diagram:
    """Relabel surviving crossings densely, preserving the order of old ids."""
    order = sorted(signs_by_id)
    new = {old: i for i, old in enumerate(order)}
    return Diagram(tuple((new[c], o) for c, o in code), tuple(signs_by_id[c] for c in order))


def _check_ids(d: Diagram, s: Iterable[int]) -> frozenset:
    s = frozenset(s)
    bad = [c for c in s if not (isinstance(c, int) and 0 <= c < d.n)]
    if bad:
        raise UnknownCrossingId(f"crossing id(s) {sorted(bad, key=str)} not in diagram with {d.n} crossings")
    return s


# ---------------------------------------------------------------------------
# elementary operations

def connected_sum(d1: Diagram, d2: Diagram) -> Diagram:
    """Connected sum cut open at each diagram's first arc.

    Ids of ``d2`` are shifted by ``d1.n``.  Compatible orientations make the
    result independent of the chosen arcs up to knot type.
    """
    shift = d1.n
    code = d1.code + tuple((c + shift, o) for c, o in d2.code)
    return Diagram(code, d1.signs + d2.signs)


def change_crossings(d: Diagram, s: Iterable[int]) -> Diagram:
    """Swap over/under (and the sign) at every crossing in ``s``."""
    s = _check_ids(d, s)
    if not s:
        return d
    code = tuple((c, (not o) if c in s else o) for c, o in d.code)
    signs = tuple(-v if c in s else v for c, v in enumerate(d.signs))
    return Diagram(code, signs, d.positions)


def mirror(d: Diagram) -> Diagram:
    return change_crossings(d, range(d.n))


def reverse(d: Diagram) -> Diagram:
    """Same diagram traversed the other way; signs of a knot are unchanged."""
    return Diagram(tuple(reversed(d.code)), d.signs, d.positions)


# ---------------------------------------------------------------------------
# planar structure

def pd_code(d: Diagram) -> list[tuple[int, int, int, int]]:
    """Edge labels around each crossing, counterclockwise from incoming under."""
    n2 = len(d.code)
    under_at = {}
    over_at = {}
    for k, (c, o) in enumerate(d.code):
        (over_at if o else under_at)[c] = k
    pd = []
    for c in range(d.n):
        u, o = under_at[c], over_at[c]
        u_in, u_out = (u - 1) % n2, u
        o_in, o_out = (o - 1) % n2, o
        if d.signs[c] > 0:
            pd.append((u_in, o_out, u_out, o_in))
        else:
            pd.append((u_in, o_in, u_out, o_out))
    return pd


@dataclass(frozen=True)
class Faces:
    faces: tuple[tuple[int, ...], ...]  # edge labels along each face
    corner_face: dict  # (crossing, slot) -> face index of corner (slot, slot + 1)


def faces(d: Diagram) -> Faces:
    """Faces of the diagram's 4-valent plane graph."""
    pd = pd_code(d)
    ends: dict[int, list[tuple[int, int]]] = {}
    for c, slots in enumerate(pd):
        for i, e in enumerate(slots):
            ends.setdefault(e, []).append((c, i))
    visited = set()
    out = []
    corner_face = {}
    for c in range(d.n):
        for i in range(4):
            if (c, i) in visited:
                continue
            face = []
            cur = (c, i)
            while cur not in visited:
                visited.add(cur)
                cc, slot = cur
                e = pd[cc][slot]
                face.append(e)
                a, b = ends[e]
                other = b if a == cur else a
                oc, oslot = other
                nxt = (oc, (oslot + 1) % 4)
                corner_face[(oc, oslot)] = len(out)
                cur = nxt
            out.append(tuple(face))
    return Faces(tuple(out), corner_face)


def is_planar(d: Diagram) -> bool:
    """Euler characteristic test for the realisability of the Gauss code."""
    if d.n == 0:
        return True
    return len(faces(d).faces) == d.n + 2


def checkerboard(d: Diagram) -> tuple[Faces, list[int]]:
    """Faces plus a proper 2-colouring (adjacent faces get different colours)."""
    fs = faces(d)
    by_edge: dict[int, list[int]] = {}
    for fi, f in enumerate(fs.faces):
        for e in f:
            by_edge.setdefault(e, []).append(fi)
    colour = [-1] * len(fs.faces)
    for root in range(len(fs.faces)):
        if colour[root] >= 0:
            continue
        colour[root] = 0
        queue = deque([root])
        while queue:
            f = queue.popleft()
            for e in fs.faces[f]:
                for g in by_edge[e]:
                    if g == f:
                        continue
                    if colour[g] < 0:
                        colour[g] = 1 - colour[f]
                        queue.append(g)
                    elif colour[g] == colour[f]:
                        raise DiagramError("diagram is not planar")
    return fs, colour


# ---------------------------------------------------------------------------
# Reidemeister moves

def _r1(d: Diagram) -> Optional[Diagram]:
    m = len(d.code)
    for k in range(m):
        c1, c2 = d.code[k][0], d.code[(k + 1) % m][0]
        if c1 == c2:
            code = [p for p in d.code if p[0] != c1]
            return _renumber(code, {c: s for c, s in enumerate(d.signs) if c != c1})
    return None


def _edge_ends(d: Diagram, e: int):
    m = len(d.code)
    return d.code[e], d.code[(e + 1) % m]


def _r2(d: Diagram, fs: Faces) -> Optional[Diagram]:
    for f in fs.faces:
        if len(f) != 2 or f[0] == f[1]:
            continue
        (a1, b1), (a2, b2) = _edge_ends(d, f[0]), _edge_ends(d, f[1])
        if a1[0] == b1[0] or {a1[0], b1[0]} != {a2[0], b2[0]}:
            continue
        if a1[1] != b1[1]:
            continue
        gone = {a1[0], b1[0]}
        code = [p for p in d.code if p[0] not in gone]
        return _renumber(code, {c: s for c, s in enumerate(d.signs) if c not in gone})
    return None


def r3_moves(d: Diagram, fs: Optional[Faces] = None) -> list[Diagram]:
    """All diagrams reachable by one Reidemeister III move."""
    if fs is None:
        fs = faces(d)
    m = len(d.code)
    out = []
    for f in fs.faces:
        if len(f) != 3 or len(set(f)) != 3:
            continue
        ends = [_edge_ends(d, e) for e in f]
        cids = {p[0] for pair in ends for p in pair}
        if len(cids) != 3 or any(a[0] == b[0] for a, b in ends):
            continue
        if not any(a[1] and b[1] for a, b in ends):
            continue
        code = list(d.code)
        for e in f:
            code[e], code[(e + 1) % m] = code[(e + 1) % m], code[e]
        out.append(Diagram(tuple(code), d.signs))
    return out


def _reduce_once(d: Diagram) -> Optional[Diagram]:
    if d.n == 0:
        return None
    r = _r1(d)
    if r is not None:
        return r
    return _r2(d, faces(d))


def simplify(d: Diagram, r3_depth: int = 3) -> Diagram:
    """Greedy R1/R2 reduction, unlocking further reductions with R3 moves.

    The result is related to ``d`` by Reidemeister moves.  An empty result
    certifies the unknot; a non-empty one proves nothing.
    """
    while True:
        nxt = _reduce_once(d)
        if nxt is not None:
            d = nxt
            continue
        nxt = _r3_unlock(d, r3_depth)
        if nxt is None:
            return d
        d = nxt


def _r3_unlock(d: Diagram, depth: int) -> Optional[Diagram]:
    """Breadth-first R3 search for a diagram admitting an R1 or R2 reduction."""
    if depth <= 0 or d.n < 3:
        return None
    seen = {d.code}
    frontier = [d]
    for _ in range(depth):
        nxt_frontier = []
        for g in frontier:
            for h in r3_moves(g):
                if h.code in seen:
                    continue
                seen.add(h.code)
                red = _reduce_once(h)
                if red is not None:
                    return red
                nxt_frontier.append(h)
        frontier = nxt_frontier
    return None


# ---------------------------------------------------------------------------
# Hopf band-sum rewrite

def band_sum_hopf_rewrite(d: Diagram, s: Iterable[int]) -> Diagram:
    """Trade each crossing in ``s`` for its opposite plus a Hopf clasp.

    Viewing the two strands at crossing ``c`` (sign ``e``) as a 2-braid
    pointing up, the generator ``sigma^e`` is rewritten as
    ``sigma^-e . sigma^e . sigma^e``: the changed crossing keeps id ``c`` and
    the clasp (a band sum with a Hopf link) gets two new ids.  The knot type
    is unchanged; changing the first clasp crossing (see
    :func:`designated_clasp_crossings`) undoes the clasp and leaves the
    crossing-changed diagram.
    """
    s = _check_ids(d, s)
    if not s:
        raise EmptySet("band_sum_hopf_rewrite needs at least one crossing")
    code = list(d.code)
    signs = list(d.signs)
    for c in sorted(s):
        e = d.signs[c]
        x2, x3 = len(signs), len(signs) + 1
        signs[c] = -e
        signs += [e, e]
        # the strand entering from the lower left is the over strand iff e > 0
        left_is_over = e > 0
        new = []
        for cid, over in code:
            if cid != c:
                new.append((cid, over))
                continue
            is_left = over == left_is_over
            # flags along the left strand for (-e, e, e): over iff sign of the
            # crossing met while that strand sits on the left is positive
            if is_left:
                flags = (e < 0, e < 0, e > 0)
            else:
                flags = (e > 0, e > 0, e < 0)
            new += [(c, flags[0]), (x2, flags[1]), (x3, flags[2])]
        code = new
    return Diagram(tuple(code), tuple(signs))


def designated_clasp_crossings(d: Diagram, s: Iterable[int]) -> frozenset:
    """Ids (in the rewritten diagram) of the clasp crossings to change."""
    s = sorted(_check_ids(d, s))
    return frozenset(d.n + 2 * k for k in range(len(s)))
