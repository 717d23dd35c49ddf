"""Exact JSON serialization of knots, with a decimal sidecar for viewers."""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .errors import IoError, ParseError
from .geom import PolyKnot, make_polyknot


def dumps(data) -> str:
    """Canonical JSON text: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def knot_to_json(k: PolyKnot) -> dict:
    return {"vertices": [[[c.numerator, c.denominator] for c in v] for v in k.vertices]}


def knot_from_json(data: dict) -> PolyKnot:
    try:
        verts = [tuple(Fraction(int(num), int(den)) for num, den in v) for v in data["vertices"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad knot vertex data: {exc}") from exc
    return make_polyknot(verts)


def _write(path: Path, text: str):
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc


def sidecar_path(path) -> Path:
    return Path(path).with_suffix(".xyz")


def export_knot(k: PolyKnot, path) -> Path:
    """Write ``path`` (exact) and ``path`` with suffix ``.xyz`` (decimal, lossy)."""
    path = Path(path)
    _write(path, dumps(knot_to_json(k)))
    lines = [" ".join(f"{float(c):.12g}" for c in v) for v in k.vertices]
    _write(sidecar_path(path), "\n".join(lines) + "\n")
    return path


def import_knot(path) -> PolyKnot:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    return knot_from_json(data)


def export_orbit(knots: Sequence[PolyKnot], directory, stem: str = "knot") -> list[Path]:
    """One file per step, named ``<stem>_step<NN>.json``."""
    width = max(2, len(str(len(knots) - 1)))
    return [export_knot(k, Path(directory) / f"{stem}_step{i:0{width}d}.json")
            for i, k in enumerate(knots)]


def write_json(data, path) -> Path:
    path = Path(path)
    _write(path, dumps(data))
    return path
