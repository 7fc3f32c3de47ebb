"""Projection-window certificates: build and verify the comparison-disc
curvature accounting that bounds how many negatively curved waypoints can
separate two projection feet.

A certificate records the configuration points (the off-geodesic pair x, y,
their projections z, w, the marks x_i between them whose epsilon-balls miss
[x, y], the points y_i of [x, y] projecting onto the marks, and the tripods
a_i, b_i, c_i at distance epsilon from each mark), the table of pairwise
distances, and a triangulated comparison disc with the mixed angle rule:
Euclidean comparison angles everywhere except at the corners of the
negatively curved triangles (a_i, b_i, c_i), which receive hyperbolic
comparison angles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

from .complexes import AngledComplex, gauss_bonnet, triangle_deficiency, vertex_curvature
from .constants import eta, max_base_angle
from .errors import DegenerateConfigurationError
from .metric import (
    H2Patch,
    MarkedGeodesic,
    MetricComplex,
    _project_field,
    approx_distance,
    project_to_path,
    shortest_path,
)
from .model import comparison_angles, model_distance

__all__ = [
    "Prop2Certificate",
    "Prop2Report",
    "CheckResult",
    "build_prop2_certificate",
    "certificate_from_configuration",
    "verify_prop2_certificate",
]


# ---------------------------------------------------------------------------
# engines: uniform access to a metric backend


class _MeshBackend:
    def __init__(self, M: MetricComplex, h: float):
        self.M = M
        self.h = h
        self.distance_error = 2.0 * h

    def distance(self, a, b):
        return approx_distance(self.M, a, b, self.h)

    def path(self, a, b):
        return shortest_path(self.M, a, b, self.h)

    def project(self, p, gamma):
        return project_to_path(self.M, p, gamma, self.h)

    def path_clearance(self, point, path):
        field = self.M.mesh(self.h).dijkstra(point)
        return _project_field(field, path, self.h).distance


class _ChartBackend:
    distance_error = 0.0

    def distance(self, a, b):
        return model_distance(a, b)

    def path(self, a, b):
        return H2Patch.geodesic(a, b)

    def project(self, p, gamma):
        return H2Patch.project(p, gamma)

    def path_clearance(self, point, path):
        return H2Patch.segment_distance_to(point, path)


def _backend_for(space, h: float):
    if isinstance(space, MetricComplex):
        return _MeshBackend(space, h)
    if isinstance(space, H2Patch) or space is H2Patch:
        return _ChartBackend()
    raise TypeError(f"unsupported space {space!r}")


# ---------------------------------------------------------------------------
# certificate data


@dataclass(frozen=True)
class Prop2Certificate:
    epsilon: float
    n_marks: int
    points: Mapping[str, object]
    dist: Mapping[tuple[str, str], float]
    complex: AngledComplex
    vertex_labels: tuple[str, ...]
    corner_specs: Mapping[tuple[int, int], tuple[float, str, tuple[str, str, str]]]
    cat_faces: tuple[int, ...]
    ball_margins: tuple[float, ...]
    ball_disjoint_precondition: bool | None
    distance_error: float
    notes: tuple[str, ...] = ()

    def distance_of(self, a: str, b: str) -> float:
        return self.dist[(a, b) if a <= b else (b, a)]


def _angle_from_table(dist_of, kappa: float, apex: str,
                      triple: tuple[str, str, str]) -> float:
    others = [p for p in triple if p != apex]
    opposite = dist_of(others[0], others[1])
    s1 = dist_of(apex, others[0])
    s2 = dist_of(apex, others[1])
    return comparison_angles((opposite, s1, s2), kappa).alpha


def certificate_from_configuration(
        epsilon: float,
        x, y, z, w,
        marks: Sequence,
        ys: Sequence,
        a_pts: Sequence,
        b_pts: Sequence,
        c_pts: Sequence,
        dist_fn: Callable,
        distance_error: float = 0.0,
        ball_margins: Sequence[float] = (),
        ball_disjoint: bool | None = None,
        notes: Sequence[str] = ()) -> Prop2Certificate:
    """Assemble a certificate from explicit configuration points.

    ``marks``, ``ys``, ``a_pts``, ``b_pts``, ``c_pts`` are equal-length
    sequences (possibly empty).  ``dist_fn(p, q)`` must return the distance
    between configuration points.
    """
    n = len(marks)
    if not (len(ys) == len(a_pts) == len(b_pts) == len(c_pts) == n):
        raise ValueError("mark-derived sequences must share one length")
    points: dict[str, object] = {"x": x, "y": y, "z": z, "w": w}
    for i in range(n):
        points[f"x{i + 1}"] = marks[i]
        points[f"y{i + 1}"] = ys[i]
        points[f"a{i + 1}"] = a_pts[i]
        points[f"b{i + 1}"] = b_pts[i]
        points[f"c{i + 1}"] = c_pts[i]

    merged_zw = n == 0 and dist_fn(z, w) <= 1e-6
    if n == 0:
        faces = [("x", "z", "y")] if merged_zw else [("x", "z", "w"), ("x", "w", "y")]
        cat = []
    else:
        faces = [("x", "z", "a1"), ("x", "a1", "b1"), ("x", "b1", "y1")]
        cat = []
        for i in range(1, n + 1):
            cat.append(len(faces))
            faces.append((f"a{i}", f"b{i}", f"c{i}"))
            if i < n:
                faces.append((f"y{i}", f"b{i}", f"c{i}"))
                faces.append((f"y{i}", f"c{i}", f"a{i + 1}"))
                faces.append((f"y{i}", f"a{i + 1}", f"b{i + 1}"))
                faces.append((f"y{i}", f"b{i + 1}", f"y{i + 1}"))
        faces.append((f"y{n}", f"b{n}", f"c{n}"))
        faces.append((f"y{n}", f"c{n}", "w"))
        faces.append((f"y{n}", "w", "y"))

    labels: list[str] = []
    index: dict[str, int] = {}
    for tri in faces:
        for lab in tri:
            if lab not in index:
                index[lab] = len(labels)
                labels.append(lab)

    table: dict[tuple[str, str], float] = {}

    def dist_of(p: str, q: str) -> float:
        key = (p, q) if p <= q else (q, p)
        if key not in table:
            table[key] = float(dist_fn(points[key[0]], points[key[1]]))
        return table[key]

    edges: dict[tuple[str, str], int] = {}
    edge_list: list[tuple[int, int]] = []

    def edge_of(p: str, q: str) -> tuple[int, int]:
        key = (p, q) if p <= q else (q, p)
        if key not in edges:
            edges[key] = len(edge_list)
            edge_list.append((index[key[0]], index[key[1]]))
        return edges[key], (1 if (p, q) == key else -1)

    face_darts = []
    corner_specs: dict[tuple[int, int], tuple[float, str, tuple[str, str, str]]] = {}
    for f, tri in enumerate(faces):
        u, v, wl = tri
        face_darts.append((edge_of(u, v), edge_of(v, wl), edge_of(wl, u)))
        is_cat = f in cat
        for pos, apex in enumerate(tri):
            if not is_cat:
                corner_specs[(f, pos)] = (0.0, apex, tri)
            else:
                i = cat.index(f) + 1
                if apex == f"b{i}":
                    corner_specs[(f, pos)] = (-1.0, apex, tri)
                else:
                    # H^2 comparison of (apex, b_i, x_i)
                    corner_specs[(f, pos)] = (-1.0, apex, (apex, f"b{i}", f"x{i}"))

    angles = {key: _angle_from_table(dist_of, *spec)
              for key, spec in corner_specs.items()}
    if any(not 0.0 < a < 2.0 * math.pi for a in angles.values()):
        if n > 0:
            raise DegenerateConfigurationError(
                "projection window degenerates (collinear or coincident "
                "configuration points); perturb x and y")
        # a completely collapsed window certifies nothing: empty disc
        return Prop2Certificate(
            epsilon=epsilon, n_marks=0, points=points, dist=dict(table),
            complex=AngledComplex(0, (), (), {}, {}), vertex_labels=(),
            corner_specs={}, cat_faces=(), ball_margins=(),
            ball_disjoint_precondition=ball_disjoint,
            distance_error=distance_error,
            notes=tuple(notes) + ("window degenerates to a segment",))
    cx = AngledComplex(len(labels), tuple(edge_list), tuple(face_darts), angles)
    return Prop2Certificate(
        epsilon=epsilon, n_marks=n, points=points, dist=dict(table), complex=cx,
        vertex_labels=tuple(labels), corner_specs=corner_specs,
        cat_faces=tuple(cat), ball_margins=tuple(ball_margins),
        ball_disjoint_precondition=ball_disjoint, distance_error=distance_error,
        notes=tuple(notes))


def build_prop2_certificate(space, gamma: MarkedGeodesic, x, y,
                            h: float = 0.05) -> Prop2Certificate:
    """Construct the certificate for a pair (x, y) against a marked geodesic.

    ``space`` is a :class:`MetricComplex` (mesh backend at resolution h) or
    an :class:`H2Patch` (exact backend).  Marks qualify when they lie
    strictly between the projection feet of x and y, at arc distance more
    than epsilon from both, and their epsilon-balls clear the geodesic
    [x, y] by more than the backend's distance error.  The ball-disjointness
    hypothesis d(x, y) < d(x, gamma) is recorded as a flag, not enforced:
    wide windows (the interesting certificates) cannot satisfy it.
    """
    backend = _backend_for(space, h)
    eps = gamma.params.epsilon
    proj_x = backend.project(x, gamma)
    proj_y = backend.project(y, gamma)
    notes = []
    if proj_y.t < proj_x.t:
        x, y = y, x
        proj_x, proj_y = proj_y, proj_x
        notes.append("swapped x and y so the projection feet are ordered")
    t_z, t_w = proj_x.t, proj_y.t
    z_pt, w_pt = proj_x.point, proj_y.point
    d_xy = backend.distance(x, y)
    ball_disjoint = d_xy < proj_x.distance

    path_xy = backend.path(x, y)
    margin = 1e-6
    marks, clearances = [], []
    for t in gamma.marks:
        if not (t_z + eps + margin <= t <= t_w - eps - margin):
            continue
        clearance = backend.path_clearance(gamma.point_at(t), path_xy)
        if clearance > eps + backend.distance_error:
            marks.append(t)
            clearances.append(clearance - eps)
        else:
            notes.append(f"mark at t={t:.6g} excluded: ball meets [x, y]")

    xs, ys, a_pts, b_pts, c_pts = [], [], [], [], []
    # bisection resolution: exact backends converge to machine precision,
    # mesh backends stop at a fraction of their own distance error
    s_tol = max(1e-12, 1e-2 * backend.distance_error)
    for t in marks:
        mark_pt = gamma.point_at(t)
        lo, hi = 0.0, path_xy.length
        g = lambda s: backend.project(path_xy.point_at(s), gamma).t - t
        if g(lo) > 0 or g(hi) < 0:
            notes.append(f"mark at t={t:.6g} skipped: no projection crossing")
            continue
        for _ in range(200):
            if hi - lo <= s_tol:
                break
            mid = 0.5 * (lo + hi)
            if g(mid) < 0:
                lo = mid
            else:
                hi = mid
        y_i = path_xy.point_at(0.5 * (lo + hi))
        xs.append(mark_pt)
        ys.append(y_i)
        a_pts.append(gamma.point_at(t - eps))
        c_pts.append(gamma.point_at(t + eps))
        b_pts.append(backend.path(mark_pt, y_i).point_at(eps))

    return certificate_from_configuration(
        eps, x, y, z_pt, w_pt, xs, ys, a_pts, b_pts, c_pts,
        dist_fn=backend.distance, distance_error=backend.distance_error,
        ball_margins=clearances, ball_disjoint=ball_disjoint, notes=notes)


# ---------------------------------------------------------------------------
# verification


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str               # pass | fail | inconclusive
    value: float
    bound: float
    margin: float
    detail: str = ""


@dataclass(frozen=True)
class Prop2Report:
    verdict: str
    checks: tuple[CheckResult, ...]
    n_marks: int
    epsilon: float

    def summary(self) -> str:
        lines = [f"certificate with N={self.n_marks}, epsilon={self.epsilon:.6g}: "
                 f"{self.verdict}"]
        for c in self.checks:
            lines.append(f"  [{c.status:>12}] {c.name}: value={c.value:.9g} "
                         f"bound={c.bound:.9g} margin={c.margin:.3g}"
                         + (f" ({c.detail})" if c.detail else ""))
        return "\n".join(lines)


def _status(value: float, bound: float, budget: float) -> str:
    if value <= bound - budget:
        return "pass"
    if value > bound + budget:
        return "fail"
    return "pass" if budget == 0.0 else "inconclusive"


def verify_prop2_certificate(cert: Prop2Certificate, tol: float = 1e-3) -> Prop2Report:
    """Check the four certificate conditions at tolerance tol.

    (a) every non-corner vertex other than the b_i has nonpositive curvature;
    (b) kappa(b_i) - def(delta_i) <= 4*max_base_angle(epsilon) - pi per mark;
    (c) the stored angles agree with the distance table under the mixed
        comparison rule and the disc's curvature total is 2*pi*chi;
    (d) N <= eta(epsilon).

    With a mesh-built certificate the distance error is propagated into an
    angle budget; a margin inside the budget yields an inconclusive status
    rather than a false pass.
    """
    cx = cert.complex
    dist_of = cert.distance_of
    # error budget: distances known to +-distance_error; angle sensitivity
    # is at most ~4/min_side per affected length
    if cert.distance_error > 0:
        min_side = min(cert.dist.values())
        angle_budget = 12.0 * cert.distance_error / max(min_side, 1e-12)
    else:
        angle_budget = 0.0

    checks: list[CheckResult] = []

    # (c) angle consistency against the distance table + Gauss-Bonnet total
    dev = 0.0
    for key, spec in cert.corner_specs.items():
        recomputed = _angle_from_table(dist_of, *spec)
        dev = max(dev, abs(recomputed - cx.corner_angles[key]))
    report = gauss_bonnet(cx)
    gb_value = max(dev, abs(report.residual))
    checks.append(CheckResult(
        "gauss_bonnet_disc", _status(gb_value, tol, 0.0), gb_value, tol,
        tol - gb_value,
        f"chi={report.euler_characteristic}, angle_dev={dev:.3g}, "
        f"residual={report.residual:.3g}"))

    # (a) nonpositive curvature away from corners and b_i
    corner_labels = {"x", "y", "z", "w"}
    b_labels = {f"b{i + 1}" for i in range(cert.n_marks)}
    worst_a, worst_label = -math.inf, ""
    for vi, lab in enumerate(cert.vertex_labels):
        if lab in corner_labels or lab in b_labels:
            continue
        k = vertex_curvature(cx, vi)
        if k > worst_a:
            worst_a, worst_label = k, lab
    if worst_label:
        n_corners = max(len(cx.corners_at(v)) for v in range(cx.n_vertices))
        budget = angle_budget * n_corners
        checks.append(CheckResult(
            "interior_nonpositive", _status(worst_a, tol, budget), worst_a, tol,
            tol - worst_a, f"worst at {worst_label}"))
    else:
        checks.append(CheckResult("interior_nonpositive", "pass", 0.0, tol, tol,
                                  "no applicable vertices (N=0)"))

    # (b) the b_i corner estimate
    rhs = 4.0 * max_base_angle(cert.epsilon) - math.pi
    worst_b, worst_i = -math.inf, 0
    for i, f in enumerate(cert.cat_faces, start=1):
        vi = cert.vertex_labels.index(f"b{i}")
        value = vertex_curvature(cx, vi) - triangle_deficiency(cx, f)
        if value > worst_b:
            worst_b, worst_i = value, i
    if cert.cat_faces:
        n_corners = max(len(cx.corners_at(cert.vertex_labels.index(f"b{i}")))
                        for i in range(1, cert.n_marks + 1))
        budget = angle_budget * (n_corners + 3)
        checks.append(CheckResult(
            "b_corner_bound", _status(worst_b, rhs + tol, budget), worst_b,
            rhs + tol, rhs + tol - worst_b, f"worst at b{worst_i}"))
    else:
        checks.append(CheckResult("b_corner_bound", "pass", -math.inf, rhs + tol,
                                  math.inf, "no marks"))

    # (d) count bound
    cap = eta(cert.epsilon)
    checks.append(CheckResult(
        "mark_count", _status(float(cert.n_marks), cap + tol, 0.0),
        float(cert.n_marks), cap + tol, cap + tol - cert.n_marks))

    if any(c.status == "fail" for c in checks):
        verdict = "fail"
    elif any(c.status == "inconclusive" for c in checks):
        verdict = "inconclusive"
    else:
        verdict = "pass"
    return Prop2Report(verdict, tuple(checks), cert.n_marks, cert.epsilon)
