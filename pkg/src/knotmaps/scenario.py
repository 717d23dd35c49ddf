"""Scenario files: a construction, a map, a horizon and the expected types.

A scenario is a JSON object::

    {"name": "...",
     "construction": "fold" | "tent" | "torus" | "custom-knot",
     "types": [catalog names],        # fold: exactly two; tent: one or more
     "phi": "prefix|tail",            # tent: schedule of catalog names
     "mu": "3", "eps": "1",           # rationals as strings or integers
     "q_turns": 3, "samples": 60,     # torus curve
     "knot": {"vertices": ...} or "knot_file": "path",   # custom-knot
     "map": SpatialMap JSON,          # optional for fold, tent and torus
     "horizon": n,                    # number of map applications
     "expected": [name | fingerprint JSON | {"torus": [p, q], "mirror": bool}],
     "cross_validate": true}          # tent only: compare with real images

Step ``n`` is the knot after ``n`` applications of the map, so a run covers
steps ``0 .. horizon``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional

from .catalog import catalog_lookup
from .construct import Schedule, build_fold, build_tent
from .errors import KnotMapError, ParseError, ValidationError
from .geom import PolyKnot, project_to_diagram
from .invariants import Fingerprint, LaurentPoly, torus_fingerprint
from .io import knot_from_json, import_knot
from .dynamics import make_tent
from .lift import Fold, SpatialMap, Winding, ZLift, orbit, spatial_map_from_json, torus_curve
from .orbit import OrbitReport, cross_validate, verify_sequence

CONSTRUCTIONS = ("fold", "tent", "torus", "custom-knot")


@dataclass
class Scenario:
    name: str
    construction: str
    horizon: int
    params: dict = field(default_factory=dict)
    map_spec: Optional[dict] = None
    expected: Optional[list] = None
    base_dir: Path = Path(".")


def parse_scenario(text: str, source: str = "<scenario>", base_dir=".") -> Scenario:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{source}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    if not isinstance(data, dict):
        raise ParseError(f"{source}: top level must be a JSON object")
    return validate(data, Path(base_dir))


def load_scenario(path) -> Scenario:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    return parse_scenario(text, str(path), path.parent)


def _rat(value, what):
    try:
        if isinstance(value, float):
            raise ValueError("floats are not exact")
        return Fraction(value)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"{what} must be a rational number: {exc}") from None


def validate(data: dict, base_dir: Path = Path(".")) -> Scenario:
    construction = data.get("construction")
    if construction not in CONSTRUCTIONS:
        raise ValidationError(f"construction must be one of {CONSTRUCTIONS}, got {construction!r}")
    horizon = data.get("horizon", 1)
    if not isinstance(horizon, int) or isinstance(horizon, bool) or horizon < 0:
        raise ValidationError(f"horizon must be a non-negative integer, got {horizon!r}")
    params: dict[str, Any] = {}
    try:
        if construction in ("fold", "tent"):
            types = data.get("types")
            if not isinstance(types, list) or not types:
                raise ValidationError("types must be a non-empty list of catalog names")
            params["types"] = [catalog_lookup(t) for t in types]
        if construction == "fold":
            if len(params["types"]) != 2:
                raise ValidationError("fold needs exactly two types")
            params["eps"] = _rat(data.get("eps", 1), "eps")
            if params["eps"] <= 0:
                raise ValidationError("eps must be positive")
        if construction == "tent":
            phi = data.get("phi")
            if not isinstance(phi, str):
                raise ValidationError("tent needs phi as a 'prefix|tail' string")
            params["phi"] = Schedule.parse(phi)
            params["mu"] = _rat(data.get("mu", 3), "mu")
            if params["mu"] <= 2:
                raise ValidationError("mu must exceed 2")
            params["cross_validate"] = bool(data.get("cross_validate", True))
        if construction == "torus":
            params["q_turns"] = int(data.get("q_turns", 3))
            params["samples"] = int(data.get("samples", 60))
            if params["samples"] < 24:
                raise ValidationError("samples must be at least 24")
        if construction == "custom-knot":
            if "knot" in data:
                params["knot"] = knot_from_json(data["knot"])
            elif "knot_file" in data:
                params["knot"] = import_knot(base_dir / data["knot_file"])
            else:
                raise ValidationError("custom-knot needs 'knot' or 'knot_file'")
            if "map" not in data:
                raise ValidationError("custom-knot needs a map")
        map_spec = data.get("map")
        if map_spec is not None:
            spatial_map_from_json(map_spec)
        expected = data.get("expected")
        if expected is not None:
            if not isinstance(expected, list):
                raise ValidationError("expected must be a list")
            expected = [_expected_entry(e) for e in expected]
    except ValidationError:
        raise
    except KnotMapError as exc:
        raise ValidationError(f"{type(exc).__name__}: {exc}") from exc
    return Scenario(str(data.get("name", "scenario")), construction, horizon, params,
                    map_spec, expected, base_dir)


def _expected_entry(e) -> Fingerprint:
    if isinstance(e, str):
        return catalog_lookup(e).fingerprint
    if isinstance(e, dict) and "torus" in e:
        p, q = e["torus"]
        return torus_fingerprint(int(p), int(q), bool(e.get("mirror", False)))
    if isinstance(e, dict) and "jones" in e:
        return Fingerprint(int(e["determinant"]), LaurentPoly.from_json(e["jones"]))
    raise ValidationError(f"cannot read expected entry {e!r}")


@dataclass
class RunResult:
    scenario: Scenario
    knot: PolyKnot
    spatial_map: SpatialMap
    report: OrbitReport
    checks: dict = field(default_factory=dict)
    build: Any = None

    @property
    def passed(self) -> bool:
        return self.report.all_match and all(self.checks.values())

    def to_json(self) -> dict:
        out = self.report.to_json()
        out["scenario"] = self.scenario.name
        out["construction"] = self.scenario.construction
        out["horizon"] = self.scenario.horizon
        out["map"] = self.spatial_map.to_json()
        out["checks"] = dict(self.checks)
        out["passed"] = self.passed
        return out


def build_knot(sc: Scenario):
    """``(knot, default map, default expectations, build object)``."""
    p = sc.params
    h = sc.horizon
    if sc.construction == "fold":
        b = build_fold(p["types"][0], p["types"][1], p["eps"])
        exp = [p["types"][0].fingerprint] + [p["types"][1].fingerprint] * h
        return b.knot, Fold(), exp, b
    if sc.construction == "tent":
        b = build_tent(p["types"], p["phi"], p["mu"])
        exp = [b.expected(n).fingerprint for n in range(h + 1)]
        return b.knot, ZLift(make_tent(p["mu"])), exp, b
    if sc.construction == "torus":
        k = torus_curve(p["q_turns"], p["samples"])
        return k, Winding(2), None, None
    return p["knot"], None, None, None


def run(sc: Scenario, horizon: Optional[int] = None) -> RunResult:
    if horizon is not None:
        if horizon < 0:
            raise ValidationError(f"horizon must be non-negative, got {horizon}")
        sc = Scenario(sc.name, sc.construction, horizon, sc.params, sc.map_spec, sc.expected, sc.base_dir)
    k, default_map, default_exp, build = build_knot(sc)
    m = spatial_map_from_json(sc.map_spec) if sc.map_spec is not None else default_map
    expected = sc.expected if sc.expected is not None else default_exp
    count = sc.horizon + 1
    if expected is None:
        exp_list = [None] * count
    else:
        if len(expected) < count:
            raise ValidationError(f"expected lists {len(expected)} steps, horizon needs {count}")
        exp_list = list(expected[:count])
    plan = build.plan if sc.construction == "tent" else None
    report = verify_sequence(k, m, exp_list, plan=plan)
    checks = {}
    if sc.construction == "tent" and sc.params.get("cross_validate") and isinstance(m, ZLift):
        checks["cross_validate"] = cross_validate(k, m, build.plan, sc.horizon)
    if sc.construction == "fold":
        flipped = project_to_diagram(m.apply(k))
        from .diagram import change_crossings
        checks["fold_flips_designated_set"] = flipped == change_crossings(build.diagram, build.flip_set)
    return RunResult(sc, k, m, report, checks, build)


def geometric_orbit(sc: Scenario, horizon: Optional[int] = None) -> list[PolyKnot]:
    k, default_map, _, _ = build_knot(sc)
    m = spatial_map_from_json(sc.map_spec) if sc.map_spec is not None else default_map
    return orbit(m, k, sc.horizon if horizon is None else horizon)


def bundled_dir() -> Path:
    return Path(__file__).parent / "scenarios"


def bundled(name: str) -> Path:
    path = bundled_dir() / name
    if not path.suffix:
        path = path.with_suffix(".json")
    return path
