"""The catkit complex file format.

A UTF-8 text document with a header line ``catkit-complex 1`` followed by
sections in fixed order; floats are serialized with ``repr`` so documents
round-trip bit-exactly through parse -> serialize.

Sections::

    [vertices]       count N
    [edges]          one "u v" pair per line
    [edge_lengths]   "e length" (present only for metric complexes)
    [faces]          signed 1-based edge tokens, then optional "kappa k"
    [corner_angles]  "f i angle"
    [triangles]      "u v w" (simplicial link files only)
    [marks]          params / t / waypoints / segfaces lines

Faces reference edge e traversed forward as ``e+1`` and backward as
``-(e+1)``.
"""

from __future__ import annotations

import math
from typing import Sequence

from .complexes import AngledComplex
from .constants import ContractionParams
from .cubelinks import SimplicialLink
from .errors import ComplexFileError
from .metric import GeodesicPath, Location, MarkedGeodesic, MetricComplex, realize
from .model import model_distance

__all__ = ["serialize_complex", "parse_complex", "parse_link", "serialize_link"]

HEADER = "catkit-complex 1"


def _fmt(x: float) -> str:
    return repr(float(x))


def serialize_complex(obj: MetricComplex | AngledComplex) -> str:
    """Canonical text form of a complex; metric data and marks are included
    when present."""
    if isinstance(obj, MetricComplex):
        base, metric = obj.base, obj
    else:
        base, metric = obj, None
    lines = [HEADER, "", "[vertices]", f"count {base.n_vertices}", "", "[edges]"]
    lines += [f"{u} {v}" for u, v in base.edges]
    if metric is not None:
        lines += ["", "[edge_lengths]"]
        lines += [f"{e} {_fmt(metric.edge_lengths[e])}" for e in range(len(base.edges))]
    lines += ["", "[faces]"]
    for f, face in enumerate(base.faces):
        tokens = [str((e + 1) * s) for e, s in face]
        kappa = metric.kappa.get(f, 0.0) if metric is not None else base.face_kappa.get(f)
        if kappa is not None:
            tokens += ["kappa", _fmt(kappa)]
        lines.append(" ".join(tokens))
    lines += ["", "[corner_angles]"]
    for (f, i) in sorted(base.corner_angles):
        lines.append(f"{f} {i} {_fmt(base.corner_angles[(f, i)])}")
    if metric is not None and metric.marked is not None:
        mg = metric.marked
        lines += ["", "[marks]"]
        p = mg.params
        params = [_fmt(p.epsilon), _fmt(p.L)]
        if p.r_min is not None:
            params.append(_fmt(p.r_min))
        lines.append("params " + " ".join(params))
        lines.append("t " + " ".join(_fmt(t) for t in mg.marks))
        wp_tokens = []
        for loc in mg.path.waypoints:
            if loc.anchor[0] == "vertex":
                wp_tokens += ["v", str(loc.anchor[1])]
            elif loc.anchor[0] == "edge":
                wp_tokens += ["e", str(loc.anchor[1]), _fmt(loc.anchor[2])]
            else:
                raise ComplexFileError(
                    f"cannot serialize a waypoint anchored at {loc.anchor!r}")
        lines.append("waypoints " + " ".join(wp_tokens))
        lines.append("segfaces " + " ".join(str(f) for f, _, _ in mg.path.segments))
    lines.append("")
    return "\n".join(lines)


class _Cursor:
    def __init__(self, text: str):
        self.lines = text.splitlines()
        self.i = 0

    def error(self, message: str) -> ComplexFileError:
        return ComplexFileError(message, line=self.i + 1)

    def peek(self) -> str | None:
        while self.i < len(self.lines):
            stripped = self.lines[self.i].strip()
            if stripped and not stripped.startswith("#"):
                return stripped
            self.i += 1
        return None

    def take(self) -> str:
        line = self.peek()
        if line is None:
            raise ComplexFileError("unexpected end of document", line=len(self.lines))
        self.i += 1
        return line


def _parse_sections(text: str) -> tuple[dict[str, list[tuple[int, str]]], _Cursor]:
    cur = _Cursor(text)
    if cur.take() != HEADER:
        raise ComplexFileError(f"missing header {HEADER!r}", line=1)
    sections: dict[str, list[tuple[int, str]]] = {}
    current: list[tuple[int, str]] | None = None
    while (line := cur.peek()) is not None:
        cur.i += 1
        if line.startswith("[") and line.endswith("]"):
            name = line[1:-1]
            if name in sections:
                raise ComplexFileError(f"duplicate section [{name}]", line=cur.i)
            current = sections.setdefault(name, [])
        elif current is None:
            raise ComplexFileError(f"content before any section: {line!r}", line=cur.i)
        else:
            current.append((cur.i, line))
    return sections, cur


def _parse_float(token: str, line: int, what: str) -> float:
    try:
        return float(token)
    except ValueError:
        raise ComplexFileError(f"bad {what} {token!r}", line=line) from None


def _parse_int(token: str, line: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ComplexFileError(f"bad {what} {token!r}", line=line) from None


def parse_complex(text: str) -> MetricComplex | AngledComplex:
    """Parse a complex document; returns a realized :class:`MetricComplex`
    when edge lengths are present, otherwise the bare :class:`AngledComplex`.
    Validation failures raise :class:`ComplexFileError` with the line."""
    sections, _ = _parse_sections(text)
    for required in ("vertices", "edges", "faces"):
        if required not in sections:
            raise ComplexFileError(f"missing [{required}] section")

    (ln, count_line), = sections["vertices"]
    parts = count_line.split()
    if len(parts) != 2 or parts[0] != "count":
        raise ComplexFileError("expected 'count N'", line=ln)
    n_vertices = _parse_int(parts[1], ln, "vertex count")

    edges = []
    for ln, line in sections["edges"]:
        parts = line.split()
        if len(parts) != 2:
            raise ComplexFileError("edge line needs two vertex indices", line=ln)
        u, v = (_parse_int(p, ln, "vertex index") for p in parts)
        if not (0 <= u < n_vertices and 0 <= v < n_vertices):
            raise ComplexFileError(f"edge ({u}, {v}) out of range", line=ln)
        edges.append((u, v))

    faces = []
    face_kappa: dict[int, float] = {}
    for ln, line in sections["faces"]:
        parts = line.split()
        if "kappa" in parts:
            k = parts.index("kappa")
            if k + 2 != len(parts):
                raise ComplexFileError("kappa needs exactly one value", line=ln)
            face_kappa[len(faces)] = _parse_float(parts[k + 1], ln, "face kappa")
            parts = parts[:k]
        darts = []
        for tok in parts:
            signed = _parse_int(tok, ln, "edge token")
            if signed == 0:
                raise ComplexFileError("edge token 0 is invalid (1-based)", line=ln)
            e = abs(signed) - 1
            if e >= len(edges):
                raise ComplexFileError(f"edge token {tok} out of range", line=ln)
            darts.append((e, 1 if signed > 0 else -1))
        faces.append(tuple(darts))

    angles: dict[tuple[int, int], float] = {}
    for ln, line in sections.get("corner_angles", []):
        parts = line.split()
        if len(parts) != 3:
            raise ComplexFileError("corner angle line needs 'f i angle'", line=ln)
        f = _parse_int(parts[0], ln, "face index")
        i = _parse_int(parts[1], ln, "corner position")
        angle = _parse_float(parts[2], ln, "angle")
        if not 0 <= f < len(faces) or not 0 <= i < len(faces[f]):
            raise ComplexFileError(f"corner ({f}, {i}) out of range", line=ln)
        if not 0.0 < angle < 2.0 * math.pi:
            raise ComplexFileError(
                f"corner ({f}, {i}) angle {angle} outside (0, 2*pi)", line=ln)
        angles[(f, i)] = angle

    try:
        base = AngledComplex(n_vertices, tuple(edges), tuple(faces), angles, face_kappa)
    except Exception as exc:
        raise ComplexFileError(str(exc)) from exc

    if "edge_lengths" not in sections:
        if "marks" in sections:
            raise ComplexFileError("[marks] requires [edge_lengths]")
        return base

    lengths: dict[int, float] = {}
    for ln, line in sections["edge_lengths"]:
        parts = line.split()
        if len(parts) != 2:
            raise ComplexFileError("edge length line needs 'e length'", line=ln)
        e = _parse_int(parts[0], ln, "edge index")
        value = _parse_float(parts[1], ln, "length")
        if value <= 0:
            raise ComplexFileError(f"edge {e} length must be positive", line=ln)
        lengths[e] = value
    try:
        metric = realize(base, lengths, face_kappa)
    except Exception as exc:
        raise ComplexFileError(f"realization failed: {exc}") from exc

    if "marks" not in sections:
        return metric
    return metric.with_marks(_parse_marks(sections["marks"], metric))


def _parse_marks(lines: Sequence[tuple[int, str]], metric: MetricComplex) -> MarkedGeodesic:
    fields: dict[str, tuple[int, list[str]]] = {}
    for ln, line in lines:
        parts = line.split()
        fields[parts[0]] = (ln, parts[1:])
    for need in ("params", "t", "waypoints", "segfaces"):
        if need not in fields:
            raise ComplexFileError(f"[marks] misses the '{need}' line")
    ln, toks = fields["params"]
    if len(toks) not in (2, 3):
        raise ComplexFileError("params needs 'eps L [rmin]'", line=ln)
    eps = _parse_float(toks[0], ln, "epsilon")
    big_l = _parse_float(toks[1], ln, "L")
    r_min = _parse_float(toks[2], ln, "r_min") if len(toks) == 3 else None
    params = ContractionParams(eps, big_l, r_min)

    ln, toks = fields["t"]
    marks = tuple(_parse_float(t, ln, "mark parameter") for t in toks)

    ln, toks = fields["waypoints"]
    waypoints: list[Location] = []
    k = 0
    while k < len(toks):
        if toks[k] == "v":
            waypoints.append(metric.vertex_location(_parse_int(toks[k + 1], ln, "vertex")))
            k += 2
        elif toks[k] == "e":
            e = _parse_int(toks[k + 1], ln, "edge")
            s = _parse_float(toks[k + 2], ln, "arc parameter")
            waypoints.append(metric.edge_location(e, s))
            k += 3
        else:
            raise ComplexFileError(f"bad waypoint token {toks[k]!r}", line=ln)

    ln, toks = fields["segfaces"]
    seg_faces = [_parse_int(t, ln, "face index") for t in toks]
    if len(seg_faces) != len(waypoints) - 1:
        raise ComplexFileError("need one segment face per waypoint pair", line=ln)
    segments = []
    for (a, b, f) in zip(waypoints, waypoints[1:], seg_faces):
        if f not in a.reps or f not in b.reps:
            raise ComplexFileError(f"waypoints do not share face {f}", line=ln)
        best = None
        for pa in a.reps[f]:
            for pb in b.reps[f]:
                w = model_distance(pa, pb)
                if best is None or w < best[0]:
                    best = (w, pa, pb)
        segments.append((f, best[1], best[2]))
    path = GeodesicPath(tuple(segments), tuple(waypoints))
    return MarkedGeodesic(path, marks, params)


def serialize_link(link: SimplicialLink) -> str:
    lines = [HEADER, "", "[vertices]", f"count {link.n_vertices}", "", "[edges]"]
    lines += [f"{u} {v}" for u, v in sorted(tuple(sorted(e)) for e in link.edges)]
    if link.triangles:
        lines += ["", "[triangles]"]
        lines += [" ".join(map(str, t))
                  for t in sorted(tuple(sorted(t)) for t in link.triangles)]
    lines.append("")
    return "\n".join(lines)


def parse_link(text: str) -> SimplicialLink:
    """Parse the graph sections of a document as a simplicial link."""
    sections, _ = _parse_sections(text)
    for required in ("vertices", "edges"):
        if required not in sections:
            raise ComplexFileError(f"missing [{required}] section")
    (ln, count_line), = sections["vertices"]
    parts = count_line.split()
    if len(parts) != 2 or parts[0] != "count":
        raise ComplexFileError("expected 'count N'", line=ln)
    n = _parse_int(parts[1], ln, "vertex count")
    edges = []
    for ln, line in sections["edges"]:
        u, v = (_parse_int(p, ln, "vertex index") for p in line.split())
        edges.append((u, v))
    triangles = []
    for ln, line in sections.get("triangles", []):
        triangles.append(tuple(_parse_int(p, ln, "vertex index") for p in line.split()))
    try:
        return SimplicialLink.from_lists(n, edges, triangles)
    except Exception as exc:
        raise ComplexFileError(str(exc)) from exc
