"""Polygonal knots mapped by continuous self-maps of 3-space.

Exact rational geometry, knot fingerprints (determinant and Jones
polynomial), tent-map symbolic dynamics, and the constructions that make a
fixed map send a knot to prescribed knot types.
"""

from .catalog import KnotTypeSpec, catalog, catalog_lookup
from .construct import (HeightPlan, Schedule, build_fold, build_tent, fold_construction,
                        sign_tracked_diagram, tent_construction)
from .diagram import (Diagram, band_sum_hopf_rewrite, change_crossings, connected_sum,
                      designated_clasp_crossings, mirror, simplify)
from .dynamics import (Itinerary, PLMap1D, SignSeq, itinerary_of, iterate, make_pl, make_tent,
                       point_from_itinerary, realizing_pair)
from .geom import (PolyKnot, is_generic_projection, make_polyknot, project_to_diagram,
                   subdivide_at_planes)
from .invariants import Fingerprint, LaurentPoly, determinant, fingerprint, jones, kauffman_bracket
from .lift import Fold, LocalCC, Winding, ZLift, apply, orbit, torus_curve
from .orbit import OrbitReport, cross_validate, finiteness_check, verify_sequence

__version__ = "0.1.0"
