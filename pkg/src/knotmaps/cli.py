"""Command-line front end: ``knotmaps <command> [options]``.

Commands:
  build       construct the scenario's knot; write knot, diagram and plan
  orbit       compute the geometric orbit and export every step
  verify      run the scenario's checks and write the report (exit 0 iff all pass)
  invariants  fingerprint of a catalog knot, a diagram file or a knot file
  catalog     list the built-in knot types
  export      write a catalog knot or a scenario knot to a file

Scenario paths may also name a bundled scenario, e.g. ``tent_alternating``.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .catalog import catalog, catalog_lookup
from .diagram import Diagram
from .errors import KnotMapError, ParseError, ValidationError
from .geom import project_to_diagram
from .invariants import fingerprint
from .io import dumps, export_knot, export_orbit, import_knot, write_json
from .scenario import build_knot, bundled, geometric_orbit, load_scenario, run


def _scenario_path(arg: str) -> Path:
    p = Path(arg)
    if p.exists():
        return p
    b = bundled(arg)
    if b.exists():
        return b
    raise ParseError(f"no scenario file {arg!r}")


def _load(args):
    if not args.scenario:
        raise ValidationError("--scenario is required")
    return load_scenario(_scenario_path(args.scenario))


def _out(args) -> Path:
    return Path(args.out or ".")


def cmd_build(args) -> int:
    sc = _load(args)
    k, _, _, build = build_knot(sc)
    out = _out(args)
    export_knot(k, out / f"{sc.name}_knot.json")
    write_json(project_to_diagram(k).to_json(), out / f"{sc.name}_diagram.json")
    if build is not None and getattr(build, "plan", None) is not None:
        write_json(build.plan.to_json(), out / f"{sc.name}_plan.json")
    print(dumps({"scenario": sc.name, "vertices": len(k.vertices),
                 "fingerprint": fingerprint(project_to_diagram(k)).to_json()}), end="")
    return 0


def cmd_orbit(args) -> int:
    sc = _load(args)
    knots = geometric_orbit(sc, args.horizon)
    out = _out(args)
    paths = export_orbit(knots, out, stem=sc.name)
    steps = []
    for i, (k, p) in enumerate(zip(knots, paths)):
        d = project_to_diagram(k)
        write_json(d.to_json(), p.with_name(p.stem + "_diagram.json"))
        steps.append({"step": i, "file": p.name, "vertices": len(k.vertices),
                      "fingerprint": fingerprint(d).to_json()})
    print(dumps({"scenario": sc.name, "steps": steps}), end="")
    return 0


def cmd_verify(args) -> int:
    sc = _load(args)
    result = run(sc, args.horizon)
    data = result.to_json()
    if args.out:
        write_json(data, _out(args) / f"{sc.name}_report.json")
    print(dumps(data), end="")
    return 0 if result.passed else 1


def cmd_invariants(args) -> int:
    if args.knot:
        d = catalog_lookup(args.knot).diagram
    elif args.diagram:
        d = Diagram.from_json(json.loads(Path(args.diagram).read_text()))
    elif args.knot_file:
        d = project_to_diagram(import_knot(args.knot_file))
    else:
        raise ValidationError("give --knot, --diagram or --knot-file")
    print(dumps({"crossings": d.n, "writhe": d.writhe(), "fingerprint": fingerprint(d).to_json()}), end="")
    return 0


def cmd_catalog(args) -> int:
    rows = [{"name": s.name, "strands": s.strands, "braid": list(s.word),
             "unknotting_set": sorted(s.unknotting_set), "fingerprint": s.fingerprint.to_json()}
            for s in catalog()]
    print(dumps(rows), end="")
    return 0


def cmd_export(args) -> int:
    if args.knot:
        k = catalog_lookup(args.knot).polyknot()
        name = args.knot
    else:
        sc = _load(args)
        k = build_knot(sc)[0]
        name = sc.name
    out = Path(args.out) if args.out else Path(f"{name}.json")
    if out.suffix != ".json":
        out = out / f"{name}.json"
    export_knot(k, out)
    print(str(out))
    return 0


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="knotmaps", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, scenario=True):
        if scenario:
            p.add_argument("--scenario", help="scenario JSON file or bundled scenario name")
            p.add_argument("--horizon", type=int, help="override the scenario horizon")
        p.add_argument("--out", help="output directory (file for export)")
        p.add_argument("--seedless", action="store_true",
                       help="accepted for compatibility; nothing here is random")

    for name, func, hlp in (("build", cmd_build, "construct the scenario knot"),
                            ("orbit", cmd_orbit, "export the geometric orbit"),
                            ("verify", cmd_verify, "run all checks of a scenario")):
        p = sub.add_parser(name, help=hlp)
        common(p)
        p.set_defaults(func=func)

    p = sub.add_parser("invariants", help="fingerprint a knot or diagram")
    p.add_argument("--knot", help="catalog name")
    p.add_argument("--diagram", help="diagram JSON file")
    p.add_argument("--knot-file", help="exact knot JSON file")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("catalog", help="list built-in knot types")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("export", help="write a knot file")
    p.add_argument("--knot", help="catalog name")
    common(p)
    p.set_defaults(func=cmd_export)
    return parser


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    if getattr(args, "horizon", None) is not None and args.horizon < 0:
        print(f"error: ValidationError: horizon must be non-negative, got {args.horizon}", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except KnotMapError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
